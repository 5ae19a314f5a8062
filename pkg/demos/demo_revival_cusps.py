"""Weak cusp revivals at beta = 1.

The coupling beta = 1 makes the problem self-adjoint and conservative, and
something remarkable happens at rational times t = p/(pi^2 q): up to a
continuous remainder, the solution is a finite superposition of translated
copies of a profile derived from the initial datum AND of its periodic
Hilbert transform, weighted by normalized cubic Gauss sums.  Each initial
jump therefore reappears as finitely many jumps plus logarithmic cusps.
At nearby irrational times the profile fractalises instead.

This script builds both evaluation routes of the singular part (lacunary
series and Gauss-sum superposition), locates the predicted singularities,
and contrasts the rational-time cusp profile with the fractal profile a
moment later.
"""
import os
import warnings

import numpy as np

from airybvp import evolution, piecewise, revival

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    u0 = piecewise.named_datum("indicator-third")
    rt = revival.RationalTime(1, 1)
    jumps = [y for y, _ in u0.jumps()]
    sings = revival.predict_singularities(jumps, rt)
    print(f"rational time t = {rt} = {rt.value:.6f}")
    print("gauss sums:", revival.gauss_sums(rt.p, rt.q).values)
    print("predicted singular points (jump + cusp at each):",
          sorted({round(s.x, 6) for s in sings}))

    profile = revival.g_coefficients(u0, 4096)
    xs = np.linspace(0.0, 1.0, 2048, endpoint=False)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", revival.CuspProximityWarning)
        ur_series = revival.revival_series(profile, rt, xs)
        ur_super = revival.revival_superposition(profile, rt, xs, jumps=jumps)
    print("max |series - superposition| on the grid:",
          f"{np.max(np.abs(ur_series - ur_super)):.2e}")
    print("(the two routes are an exact finite rearrangement of each other)")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        series = evolution.build_series(1.0, u0, n_max=614)
    u_rational = np.real(series.evaluate_grid(xs, [rt.value])[0])
    u_fractal = np.real(series.evaluate_grid(xs, [rt.value + 0.001])[0])
    print("full-series profiles computed at t and t + 0.001 (fractalisation)")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; plots skipped")
        return
    fig, axes = plt.subplots(3, 1, figsize=(8, 9), sharex=True)
    axes[0].plot(xs, ur_super, lw=0.8)
    for s in sings:
        axes[0].axvline(s.x, color="tab:red", lw=0.5, ls=":")
    axes[0].set_title("singular part at t = 1/pi^2 (cusps at predicted points)")
    axes[1].plot(xs, u_rational, lw=0.8)
    axes[1].set_title("full solution at the rational time")
    axes[2].plot(xs, u_fractal, lw=0.8)
    axes[2].set_title("full solution 0.001 later: fractalised profile")
    axes[2].set_xlabel("x")
    fig.tight_layout()
    fig.savefig(os.path.join(OUT, "revival_cusps.png"), dpi=150)
    print(f"wrote {OUT}/revival_cusps.png")


if __name__ == "__main__":
    main()
