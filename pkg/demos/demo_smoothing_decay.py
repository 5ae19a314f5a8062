"""Smoothing and decay for 0 < beta < 1.

Starting from the discontinuous indicator of (1/3, 2/3), the series
solution becomes infinitely smooth for every t > 0: the mode at index n
is damped like e^{3 log(beta) kappa_n^2 t}, so jumps cannot survive and
no revival can occur.  The L2 norm decays monotonically, governed by the
energy identity

    ||u(t)||^2 + (1 - beta^2) * integral_0^t u_x(0,s)^2 ds = ||u0||^2.

This script evolves the indicator for beta = 0.9 (slow damping, visible
transport) and beta = 0.01 (aggressive damping), prints the energy
bookkeeping, and draws solution snapshots.
"""
import os
import warnings

import numpy as np

from airybvp import evolution, piecewise

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    u0 = piecewise.named_datum("indicator-third")
    times = [0.0, 0.001, 0.01, 0.05, 0.1]
    snapshots = {}
    for beta in (0.9, 0.01):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            series = evolution.build_series(beta, u0, n_max=120)
        xs = np.linspace(0.0, 1.0, 513)
        snapshots[beta] = np.real(series.evaluate_grid(xs, times))
        report = evolution.energy_report(series, [0.01, 0.1, 0.5, 1.0])
        print(f"beta = {beta}:")
        print("  norms:", [f"{v:.5f}" for v in report["norms"]])
        print("  energy-identity residuals:",
              [f"{v:.2e}" for v in report["identity_residuals"]])
        print("  boundary-flux bound holds:", report["flux_bound_ok"])
        d2 = [evolution.second_difference_max(series, 0.05, 2 ** g) for g in (8, 9, 10)]
        print("  max |u_xx| estimates under refinement:", [f"{v:.4f}" for v in d2])
        print("  (stable under refinement: the t > 0 profile is smooth)")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; plots skipped")
        return
    xs = np.linspace(0.0, 1.0, 513)
    fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
    for ax, beta in zip(axes, (0.9, 0.01)):
        for i, t in enumerate(times):
            ax.plot(xs, snapshots[beta][i], label=f"t={t}")
        ax.set_title(f"beta = {beta}")
        ax.set_xlabel("x")
    axes[0].set_ylabel("u(x,t)")
    axes[0].legend(fontsize=8)
    fig.suptitle("smoothing and decay of a discontinuous datum")
    fig.tight_layout()
    fig.savefig(os.path.join(OUT, "smoothing_decay.png"), dpi=150)
    print(f"wrote {OUT}/smoothing_decay.png")


if __name__ == "__main__":
    main()
