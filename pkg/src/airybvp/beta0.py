"""The uncoupled endpoint case beta = 0 (third condition u_x(1,t) = 0).

No eigenfunction basis exists here; the solution lives in a contour
integral whose lower-half-plane part collapses, by residues, to a series
over the zeros of the (rotation-symmetric) characteristic function

    D(k) = e^{-ik} + a e^{-iak} + a^2 e^{-ia^2 k},  a = e^{2 pi i/3},

whose nonzero zeros lie on the three rays -i a^j R+ and approach
-i (2n + 1/3) pi / sqrt(3) on the negative imaginary axis.  The series
terms carry e^{i k_n^3 t} = e^{-y_n^3 t}, so the sum converges brutally
fast for every t > 0 and represents a smooth function: discontinuities
cannot survive, and the norm decay rules out any revived component.

Full evaluation of the remaining oscillatory contour integral is out of
scope; only the residue component and the integrand building blocks are
provided.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import piecewise
from .exceptions import EmptyInputError, NonpositiveTimeError, SeedDivergedError
from .rootfinding import Region, find_zeros, newton_polish

SQRT3 = math.sqrt(3.0)
ALPHA = complex(-0.5, SQRT3 / 2.0)
_A = (1.0 + 0.0j, ALPHA, ALPHA * ALPHA)

SEED_BASIN = 1.0


def characteristic0(k):
    """D(k) above; equals the coupled characteristic at beta = 0 with k
    reflected through the origin."""
    k = np.asarray(k, dtype=complex)
    total = np.zeros(k.shape, dtype=complex)
    for a in _A:
        total += a * np.exp(-1j * a * k)
    return total if total.ndim else complex(total)


def characteristic0_deriv(k):
    k = np.asarray(k, dtype=complex)
    total = np.zeros(k.shape, dtype=complex)
    for a in _A:
        total += -1j * a * a * np.exp(-1j * a * k)
    return total if total.ndim else complex(total)


def numerator_minus(u0, k):
    """Rotational symmetrization of the datum transform entering the
    lower-contour integrand: U(k) + a U(ak) + a^2 U(a^2 k) with
    U the transform integral(e^{-ikz} u0(z) dz, 0..1)."""
    k = np.asarray(k, dtype=complex)
    total = np.zeros(k.shape, dtype=complex)
    for a in _A:
        total += a * piecewise.exp_transform(u0, a * k)
    return total if total.ndim else complex(total)


def numerator_plus(u0, k):
    """Upper-contour numerator e^{-ik} * numerator_minus - U(k) D(k)."""
    k = np.asarray(k, dtype=complex)
    out = np.exp(-1j * k) * numerator_minus(u0, k) - piecewise.exp_transform(
        u0, k
    ) * characteristic0(k)
    return out if out.ndim else complex(out)


def ray_seed(n):
    return complex(0.0, -(2 * n + 1.0 / 3.0) * math.pi / SQRT3)


def ray_zeros(n_max, verify=False):
    """Zeros on the negative imaginary axis, Newton-polished from the seeds
    -i(2n + 1/3) pi / sqrt(3), n = 1..n_max.

    The characteristic is real on the axis and its derivative is -i times
    a real number there, so the complex Newton iterates stay on the axis
    to roundoff.  A seed whose polish leaves the axis neighbourhood is
    retried with the argument-principle finder on an enclosing rectangle
    (SeedDiverged if that also fails); ``verify=True`` double-checks every
    zero the same way.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    out = []
    for n in range(1, int(n_max) + 1):
        seed = ray_seed(n)
        z = newton_polish(characteristic0, characteristic0_deriv, seed)
        boxed = verify
        if z is None or abs(z - seed) > SEED_BASIN:
            boxed = True
            z = None
        if boxed:
            half = 1.0
            region = Region.rectangle(
                -half, half, seed.imag - half, seed.imag + half, min_diameter=1e-6
            )
            report = find_zeros(
                characteristic0, characteristic0_deriv, region, residual_tol=1e-9 * _scale(seed)
            )
            cands = [r for r, fl in zip(report.roots, report.multiplicity_flags) if not fl]
            if z is None:
                if not cands:
                    raise SeedDivergedError(f"no zero near the ray seed for n={n}")
                z = min(cands, key=lambda r: abs(r - seed))
            elif not any(abs(c - z) < 1e-6 for c in cands):
                raise SeedDivergedError(f"polish and box finder disagree at n={n}")
        out.append(complex(z))
    return out


def _scale(k):
    """Typical magnitude of the characteristic near k (for residual tests)."""
    return max(np.exp(np.imag(a * complex(k))) for a in _A)


@dataclass(frozen=True)
class ResidueExpansion:
    """Residue data for the lower-contour series: zeros k_n on -iR+ and the
    weights numerator_minus(k_n) / D'(k_n)."""

    datum: object
    zeros: tuple
    weights: tuple


def build_residue_expansion(u0, n_max):
    zeros = ray_zeros(n_max)
    weights = tuple(
        complex(numerator_minus(u0, k) / characteristic0_deriv(k)) for k in zeros
    )
    return ResidueExpansion(datum=u0, zeros=tuple(zeros), weights=weights)


def residue_series_eval(rep, x, t, n_terms=None):
    """Partial sum of sum_n e^{i k_n (x-1) + i k_n^3 t} * weight_n for t > 0.

    Returns (value, last_term_magnitude); the second entry certifies the
    truncation, since with k_n = -i y_n the time factor is e^{-y_n^3 t}.
    """
    if t <= 0:
        raise NonpositiveTimeError("the residue series needs t > 0")
    n_terms = len(rep.zeros) if n_terms is None else min(int(n_terms), len(rep.zeros))
    ks = np.asarray(rep.zeros[:n_terms])
    ws = np.asarray(rep.weights[:n_terms])
    with np.errstate(under="ignore"):
        terms = np.exp(1j * ks * (float(x) - 1.0) + 1j * ks ** 3 * t) * ws
    value = complex(terms.sum())
    last = float(abs(terms[-1])) if n_terms else 0.0
    return value, last


def residue_series_terms(rep, x, t):
    """Magnitudes of the individual series terms (decay diagnostics)."""
    if t <= 0:
        raise NonpositiveTimeError("the residue series needs t > 0")
    ks = np.asarray(rep.zeros)
    ws = np.asarray(rep.weights)
    with np.errstate(under="ignore"):
        return np.abs(np.exp(1j * ks * (float(x) - 1.0) + 1j * ks ** 3 * t) * ws)


def weak_revival_report(norms):
    """Diagnostic verdict on a sampled norm history [(t, ||u(t)||), ...].

    A norm-reviving component would return to a fixed multiple of the
    initial norm at arbitrarily large equally spaced times; a history that
    decays below 5% of its initial value excludes that.  Verdicts:
    'consistent with revival' (variation under 1%), 'decay excludes norm
    revival' (non-increasing to under 5%), otherwise 'inconclusive'.
    """
    if not norms:
        raise EmptyInputError("no norm samples supplied")
    times = [float(t) for t, _ in norms]
    values = [float(v) for _, v in norms]
    if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
        raise ValueError("times must be strictly increasing")
    initial = values[0]
    report = {
        "times": times,
        "norms": values,
        "initial": initial,
        "final_fraction": values[-1] / initial if initial else math.inf,
        "monotone_nonincreasing": all(b <= a + 1e-9 for a, b in zip(values, values[1:])),
    }
    spread = (max(values) - min(values)) / initial if initial else 0.0
    if spread < 0.01:
        report["verdict"] = "consistent with revival"
    elif report["monotone_nonincreasing"] and report["final_fraction"] < 0.05:
        report["verdict"] = "decay excludes norm revival"
    else:
        report["verdict"] = "inconclusive"
    return report
