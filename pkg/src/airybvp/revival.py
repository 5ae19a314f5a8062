"""Rational-time machinery for the self-adjoint (beta = 1) problem.

At times t = p/(pi^2 q) with p, q coprime, the singular part of the
solution collapses from a lacunary series over frequencies (2n - 1/3) pi
into a finite superposition of q translated copies of a 1-periodic
profile and of its periodic Hilbert transform, weighted by normalized
cubic Gauss sums.  Jumps of the profile reappear as jumps (from the
direct copies) and as logarithmic cusps (from the Hilbert copies).

The reduction is an exact finite-sum rearrangement for any coefficient
sequence: expanding the cubic phase e^{2 pi i p (4n^3-2n^2)/q} over the
characters e^{-2 pi i k n / q} produces the Gauss-sum weights, and the
positive-frequency projection G + iHG - mean turns the one-sided sum
into translated profile values.  Tests exploit this by comparing the two
evaluation routes with arbitrary coefficients.

Hilbert convention: multiplier -i sgn(n) with zero mean (cos -> sin).
The opposite sign projects onto negative frequencies and breaks the
rearrangement, which pins the convention.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import piecewise
from .exceptions import CuspProximityWarning, EmptyInputError

CUSP_RADIUS = 1e-6   # warn when an evaluation point is this close to a jump copy
GAUSS_NEGLIGIBLE = 1e-12
CLIP_LIMIT = 1e6     # rendering clip for logarithmically divergent values


@dataclass(frozen=True)
class RationalTime:
    """t = p / (pi^2 q) with p, q coprime positive integers; reduced on
    construction (with a warning when reduction was needed)."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p <= 0 or q <= 0:
            raise ValueError("p and q must be positive integers")
        g = math.gcd(p, q)
        if g > 1:
            warnings.warn(f"reduced {p}/{q} to {p // g}/{q // g}", stacklevel=3)
            p, q = p // g, q // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def value(self):
        return self.p / (math.pi ** 2 * self.q)

    def __str__(self):
        return f"{self.p}/({self.q} pi^2)"


@dataclass(frozen=True)
class GaussSumTable:
    """Normalized cubic Gauss sums d_k for k = 0..q-1; sums to 1 exactly."""

    p: int
    q: int
    values: tuple


def gauss_sums(p, q):
    """d_k = (1/q) sum_m e^{2 pi i (m k + (4m^3 - 2m^2) p)/q}, m = 0..q-1.

    Phases are reduced mod q in exact integer arithmetic before any
    floating-point call; m^3 coefficients would otherwise lose the phase
    entirely for moderate q.
    """
    p, q = int(p), int(q)
    if p <= 0 or q <= 0:
        raise ValueError("p and q must be positive")
    if math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    cubic = [((4 * m ** 3 - 2 * m * m) * p) % q for m in range(q)]
    quarter = {0: 1.0 + 0.0j}
    if q % 2 == 0:
        quarter[q // 2] = -1.0 + 0.0j
    if q % 4 == 0:
        quarter[q // 4] = 1.0j
        quarter[3 * q // 4] = -1.0j
    vals = []
    for k in range(q):
        acc = 0.0 + 0.0j
        for m in range(q):
            r = (m * k + cubic[m]) % q
            exact = quarter.get(r)
            acc += exact if exact is not None else np.exp(2j * np.pi * r / q)
        vals.append(acc / q)
    return GaussSumTable(p=p, q=q, values=tuple(vals))


@dataclass(frozen=True)
class PeriodicProfile:
    """1-periodic function sum_n c(n) e^{2 pi i n x}, |n| <= n_modes.

    ``coef_pos[i]`` is c(i+1), ``coef_neg[i]`` is c(-(i+1)).  Real
    profiles satisfy c(-n) = conj(c(n)).
    """

    mean: complex
    coef_pos: tuple
    coef_neg: tuple

    def __post_init__(self):
        if len(self.coef_pos) != len(self.coef_neg):
            raise ValueError("coefficient arrays must have equal length")
        object.__setattr__(self, "mean", complex(self.mean))
        object.__setattr__(self, "coef_pos", tuple(complex(c) for c in self.coef_pos))
        object.__setattr__(self, "coef_neg", tuple(complex(c) for c in self.coef_neg))

    @classmethod
    def real_profile(cls, mean, coef_pos):
        coef_pos = tuple(complex(c) for c in coef_pos)
        return cls(mean=complex(mean), coef_pos=coef_pos,
                   coef_neg=tuple(np.conj(c) for c in coef_pos))

    @property
    def n_modes(self):
        return len(self.coef_pos)

    def is_real(self, tol=1e-12):
        return (
            abs(self.mean.imag) <= tol
            and all(abs(p - np.conj(m)) <= tol for p, m in zip(self.coef_pos, self.coef_neg))
        )

    def truncated(self, n_modes):
        n = min(int(n_modes), self.n_modes)
        return PeriodicProfile(self.mean, self.coef_pos[:n], self.coef_neg[:n])

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        n = np.arange(1, self.n_modes + 1)
        ph = np.exp(2j * np.pi * np.multiply.outer(x, n))
        out = self.mean + ph @ np.asarray(self.coef_pos) + np.conj(ph) @ np.asarray(self.coef_neg)
        return out if out.ndim else complex(out)

    def analytic_signal(self, x):
        """(G + iHG)(x) - that is, mean + 2 sum_{n>=1} c(n) e^{2 pi i n x}."""
        x = np.asarray(x, dtype=float)
        n = np.arange(1, self.n_modes + 1)
        ph = np.exp(2j * np.pi * np.multiply.outer(x, n))
        out = self.mean + 2.0 * (ph @ np.asarray(self.coef_pos))
        return out if out.ndim else complex(out)


def periodic_hilbert(profile):
    """Fourier multiplier -i sgn(n), zero mean: cos(2 pi x) -> sin(2 pi x)."""
    return PeriodicProfile(
        mean=0.0,
        coef_pos=tuple(-1j * c for c in profile.coef_pos),
        coef_neg=tuple(1j * c for c in profile.coef_neg),
    )


def g_coefficients(u0, n_modes):
    """Profile coefficients from the datum: c(n) = transform of u0 at
    frequency (2n - 1/3) pi for n = 1..n_modes, stored at Fourier index n;
    the mean is set to the plain integral of the datum (any real value is
    consistent, since the superposition subtracts it back out).
    """
    n = np.arange(1, int(n_modes) + 1)
    freqs = (2.0 * n - 1.0 / 3.0) * np.pi
    coef = piecewise.exp_transform(u0, freqs)
    mean = complex(u0.integral())
    if abs(mean.imag) > 1e-12 * (1.0 + abs(mean)):
        raise ValueError("profile mean must be real; datum integral is not")
    return PeriodicProfile.real_profile(mean.real, coef)


def _rational_phases(rt, n_modes):
    """Exact-mod-2pi phases (2n - 1/3)^3 pi^3 t at t = p/(pi^2 q):
    pi p (6n-1)^3 / (27 q) with the integer (6n-1)^3 p reduced mod 54 q."""
    mod = 54 * rt.q
    red = np.array(
        [((6 * n - 1) ** 3 * rt.p) % mod for n in range(1, n_modes + 1)],
        dtype=float,
    )
    return np.pi * red / (27.0 * rt.q)


def revival_series(profile, t, x):
    """Singular-part series sum_{n=1}^{N} 2 Re[c(n) e^{i(2n-1/3)^3 pi^3 t}
    e^{i(2n-1/3) pi x}].

    ``t`` may be a float or a RationalTime; rational times use exact
    integer phase reduction (the cubic phases reach ~1e13 rad at N = 1e4,
    where naive float reduction loses three digits).
    """
    xs = np.asarray(x, dtype=float)
    n = np.arange(1, profile.n_modes + 1)
    if isinstance(t, RationalTime):
        tphase = _rational_phases(t, profile.n_modes)
    else:
        tphase = ((2.0 * n - 1.0 / 3.0) * np.pi) ** 3 * float(t)
    coef = np.asarray(profile.coef_pos) * np.exp(1j * tphase)
    ph = np.exp(1j * np.multiply.outer(xs, (2.0 * n - 1.0 / 3.0) * np.pi))
    out = 2.0 * np.real(ph @ coef)
    return out if out.ndim else float(out)


def superposition_bracket(profile, rt, x):
    """L1(x) + i L2(x) - L3: Gauss-sum-weighted translates of the profile
    plus i times translates of its Hilbert transform, minus the mean.

    Returned complex; its modulus diverges logarithmically (in the mode
    cutoff) at translated jumps of the profile, at the rate |jump|/pi per
    e-fold, independent of the jump's phase.
    """
    if not isinstance(rt, RationalTime):
        rt = RationalTime(*rt)
    table = gauss_sums(rt.p, rt.q)
    xs = np.asarray(x, dtype=float)
    shift = rt.p / (3.0 * rt.q)
    hil = periodic_hilbert(profile)
    acc = np.zeros(xs.shape, dtype=complex)
    for k, d in enumerate(table.values):
        if abs(d) <= GAUSS_NEGLIGIBLE:
            continue
        y = xs + shift - k / rt.q
        acc += d * (profile.evaluate(y) + 1j * hil.evaluate(y))
    out = acc - profile.mean
    return out if out.ndim else complex(out)


def revival_superposition(profile, rt, x, jumps=None):
    """Finite-superposition form of the series at a rational time:
    Re{ e^{-i pi (9x + p/q)/27} [L1 + i L2 - L3] }.

    Agrees with ``revival_series`` at the same truncation to roundoff.
    When ``jumps`` (locations of profile jumps) is supplied, evaluation
    points within CUSP_RADIUS of a translated jump trigger a
    CuspProximityWarning: the value there is dominated by the logarithmic
    singularity of the Hilbert copies.
    """
    if not isinstance(rt, RationalTime):
        rt = RationalTime(*rt)
    xs = np.asarray(x, dtype=float)
    if jumps:
        sings = predict_singularities(jumps, rt)
        locs = np.array([s.x for s in sings])
        if locs.size:
            d = np.abs((xs[..., None] - locs + 0.5) % 1.0 - 0.5)
            if np.any(d < CUSP_RADIUS):
                warnings.warn(
                    "evaluation point within 1e-6 of a predicted singularity",
                    CuspProximityWarning,
                    stacklevel=2,
                )
    phase = np.exp(-1j * np.pi * (9.0 * xs + rt.p / rt.q) / 27.0)
    out = np.real(phase * superposition_bracket(profile, rt, xs))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Singularity:
    x: float
    kind: str
    source_jump: float
    copy_index: int


def predict_singularities(jumps, rt):
    """Singular locations of the superposition: each profile jump y_j
    produces, for every k with d_k != 0, a jump and a logarithmic cusp at
    x = y_j - p/(3q) + k/q  (mod 1)."""
    if not isinstance(rt, RationalTime):
        rt = RationalTime(*rt)
    table = gauss_sums(rt.p, rt.q)
    out = []
    for y in jumps:
        y = float(y)
        for k, d in enumerate(table.values):
            if abs(d) <= GAUSS_NEGLIGIBLE:
                continue
            loc = (y - rt.p / (3.0 * rt.q) + k / rt.q) % 1.0
            out.append(Singularity(x=loc, kind="jump", source_jump=y, copy_index=k))
            out.append(Singularity(x=loc, kind="cusp", source_jump=y, copy_index=k))
    out.sort(key=lambda s: (s.x, s.kind, s.source_jump))
    return out


def clip_for_rendering(values, limit=CLIP_LIMIT):
    """Clip logarithmically divergent values for emission, flagging which
    entries were clipped (cusps are infinite; plots show them finite)."""
    arr = np.asarray(values, dtype=float)
    clipped = np.abs(arr) > limit
    return np.clip(arr, -limit, limit), clipped
