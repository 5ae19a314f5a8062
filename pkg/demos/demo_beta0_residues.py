"""The uncoupled endpoint case beta = 0: no basis, no revivals.

With u_x(1,t) = 0 the eigenfunctions stop forming a usable basis and the
solution only exists as a contour integral.  Its lower-contour part
collapses into a residue series over zeros lying on the negative
imaginary axis near -i (2n + 1/3) pi / sqrt(3); each term carries
e^{-y_n^3 t}, so the series converges ferociously for t > 0 and its sum
is smooth.  Meanwhile the solution norm decays, and a norm-reviving
component would have to keep returning to a fixed multiple of the
initial norm at equally spaced times, which decay forbids.  This script
tabulates the ray zeros, evaluates the residue component, and runs the
decay-verdict diagnostic on norms borrowed from a small-coupling series.
"""
import math
import os
import warnings

import numpy as np

from airybvp import beta0, evolution, piecewise

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    u0 = piecewise.named_datum("indicator-third")
    rep = beta0.build_residue_expansion(u0, 40)
    print("first ray zeros vs asymptotic ladder -i(2n+1/3)pi/sqrt(3):")
    for n in (1, 2, 3, 10):
        z = rep.zeros[n - 1]
        print(f"  n={n:2d}: k = {z.imag:+.9f}i   seed = {beta0.ray_seed(n).imag:+.9f}i")

    xs = np.linspace(0.0, 1.0, 257)
    for t in (0.005, 0.02, 0.1):
        vals = np.array([beta0.residue_series_eval(rep, float(x), t)[0] for x in xs])
        print(f"t={t}: residue component max magnitude {np.max(np.abs(vals)):.4e}")

    # decay verdict from a slightly-coupled series as a stand-in history,
    # sampled at the equally spaced times t_n = n p/(2 pi)^2 where a
    # norm-reviving component would have to recur
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        series = evolution.build_series(0.2, u0, n_max=60)
    times = [n / (2.0 * math.pi) ** 2 for n in range(1, 9)]
    norms = [(t, evolution.l2_norm_at(series, t)) for t in times]
    verdict = beta0.weak_revival_report(norms)
    print("sampled norms at t_n = n/(2 pi)^2:", [f"{v:.4f}" for _, v in norms])
    print("verdict:", verdict["verdict"])

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; plot skipped")
        return
    fig, ax = plt.subplots(figsize=(7, 4))
    for t in (0.005, 0.02, 0.1):
        vals = np.array([beta0.residue_series_eval(rep, float(x), t)[0] for x in xs])
        ax.plot(xs, vals.imag, label=f"Im, t={t}")
    ax.set_xlabel("x")
    ax.set_title("residue component of the uncoupled-case solution")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(OUT, "beta0_residues.png"), dpi=150)
    print(f"wrote {OUT}/beta0_residues.png")


if __name__ == "__main__":
    main()
