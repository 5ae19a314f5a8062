"""Where the eigenvalues live.

The spatial operator behind u_t + u_xxx = 0 on (0,1), with u(0) = u(1) = 0
and u_x(1) = beta u_x(0), has eigenvalues k_n^3 where the k_n are zeros of
an entire three-exponential characteristic function.  For small coupling
the zeros split into two visually distinct families:

* horizontal rays near Im k = log(beta), approaching (2n - 1/3) pi +
  i log(beta) as |n| grows, and
* a segment of the positive imaginary axis near (2n + 1/3) pi i / sqrt(3)
  (the uncoupled-case ladder), populated while beta e^{y} stays small.

Both families repeat under rotation by 120 degrees; rotated copies share
the eigenvalue and the eigenfunction of their representative.  This
script enumerates everything for beta = 1e-6 and draws the loci.
"""
import os
import warnings

import numpy as np

from airybvp import spectral
from airybvp.rootfinding import Region

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    beta = 1e-6
    region = Region.rectangle(-12, 12, -30, 30, min_diameter=1e-3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = spectral.enumerate_spectrum(beta, 30, region)
    rays = [p for p in pairs if abs(p.index) <= 30]
    segment = [p for p in pairs if p.index > 30]
    print(f"beta = {beta}: {len(rays)} ray zeros, {len(segment)} segment zeros")
    print("first ray zeros (index, k):")
    for p in sorted(rays, key=lambda p: abs(p.index))[:6]:
        print(f"  n={p.index:+3d}  k = {p.k:.6f}")
    print("segment zeros (imaginary-axis representatives):")
    for p in segment:
        print(f"  aux {p.index}: k = {p.k:.6f}")
    print("note: ray indices |n| <= 4 are pre-asymptotic at this coupling and")
    print("are absorbed into the segment family; the ray family starts at |n| = 5.")

    rows = []
    for p in pairs:
        for rot in (1.0, spectral.ALPHA, spectral.ALPHA ** 2):
            z = rot * p.k
            rows.append((p.index, z.real, z.imag))
    np.savetxt(
        os.path.join(OUT, "spectrum_locus_beta1e-6.csv"),
        np.array(rows),
        delimiter=",",
        header="n,re_k,im_k",
        comments="",
    )

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; CSV written, plot skipped")
        return
    fig, ax = plt.subplots(figsize=(7, 7))
    pts = np.array([(r[1], r[2]) for r in rows])
    ax.scatter(pts[:, 0], pts[:, 1], marker="x", c="tab:red", label="zeros")
    logb = np.log(beta)
    ax.axhline(logb, ls="--", lw=0.8, c="tab:blue")
    ax.plot([0, 0], [0, 28], ls=":", lw=1.2, c="tab:blue", label="segment locus")
    ax.set_xlabel("Re k")
    ax.set_ylabel("Im k")
    ax.set_title("zeros of the characteristic function, beta = 1e-6")
    ax.legend()
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(os.path.join(OUT, "spectrum_locus_beta1e-6.png"), dpi=150)
    print(f"wrote {OUT}/spectrum_locus_beta1e-6.png")


if __name__ == "__main__":
    main()
