"""Spectral data for the third-order operator behind u_t + u_xxx = 0 on (0,1)
with u(0) = u(1) = 0 and u_x(1) = beta u_x(0), beta in (0,1].

The eigenvalues are the cubes of the zeros of an entire characteristic
function built from the three cube-root-of-unity rotations of e^{ik}.
Large zeros sit on horizontal rays and are polished from asymptotic
seeds; zeros near the origin are swept up by the argument-principle
finder.  Eigenfunctions are three-exponential combinations, and the
adjoint family is obtained by conjugating the zero.

Everything here runs in a rescaled regime internally: eigenfunctions and
inner products grow like exp(sqrt(3)|k|/2) and would overflow doubles
near |k| ~ 800, so each quantity is computed as mantissa * e^{logscale}
with exponents combined before any call to exp.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import piecewise
from .exceptions import BetaZeroError, NearDegenerateError
from .rootfinding import Region, find_zeros, newton_polish

SQRT3 = math.sqrt(3.0)
ALPHA = complex(-0.5, SQRT3 / 2.0)
_A = (1.0 + 0.0j, ALPHA, ALPHA * ALPHA)  # powers of the primitive cube root

RAY_RESIDUAL_TOL = 1e-10     # on the rescaled characteristic function
NEWTON_BASIN = 1.0           # polished ray zero must stay this close to its seed
DEGENERACY_FLOOR = 1e-12     # |<X,X*>| below this times e^{sqrt3|k|} is degenerate
ORIGIN_EXCLUSION = 1e-6      # k = 0 is a zero but never an eigenvalue


def _check_beta(beta, positive=False):
    beta = float(beta)
    lo = 0.0
    if not lo <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    if positive and beta == 0.0:
        raise BetaZeroError("beta = 0 has no eigenfunction basis")
    return beta


def characteristic(beta, k):
    """The entire function whose zeros cube to the eigenvalues.

    beta*[e^{-ik} + a e^{-iak} + a^2 e^{-ia^2 k}]
      + e^{ik} + a e^{iak} + a^2 e^{ia^2 k},  a = e^{2 pi i/3}.
    Vectorized over k.  Overflows for |Im(a^j k)| beyond ~700; use
    characteristic_scaled for root work.
    """
    beta = _check_beta(beta)
    k = np.asarray(k, dtype=complex)
    total = np.zeros(k.shape, dtype=complex)
    for a in _A:
        total += beta * a * np.exp(-1j * a * k) + a * np.exp(1j * a * k)
    return total if total.ndim else complex(total)


def characteristic_deriv(beta, k):
    beta = _check_beta(beta)
    k = np.asarray(k, dtype=complex)
    total = np.zeros(k.shape, dtype=complex)
    for a in _A:
        total += 1j * a * a * (np.exp(1j * a * k) - beta * np.exp(-1j * a * k))
    return total if total.ndim else complex(total)


def _char_logscale(beta, k):
    """max over terms of log|term|; real, so rescaling preserves arguments."""
    k = np.asarray(k, dtype=complex)
    ims = np.stack([np.imag(a * k) for a in _A])
    s = np.max(-ims, axis=0)
    if beta > 0.0:
        s = np.maximum(s, math.log(beta) + np.max(ims, axis=0))
    return s


def characteristic_scaled(beta, k):
    """(value, derivative) of the characteristic function times e^{-s(k)}
    with s(k) the running log-magnitude of its largest term.

    The factor is positive real, so arguments (and hence winding counts)
    are unchanged, Newton steps value/derivative are exact, and residuals
    are O(1) quantities.
    """
    beta = _check_beta(beta)
    k = np.asarray(k, dtype=complex)
    s = _char_logscale(beta, k)
    val = np.zeros(k.shape, dtype=complex)
    der = np.zeros(k.shape, dtype=complex)
    logb = math.log(beta) if beta > 0.0 else None
    for a in _A:
        plus = np.exp(1j * a * k - s)
        val += a * plus
        der += 1j * a * a * plus
        if logb is not None:
            minus = np.exp(logb - 1j * a * k - s)
            val += a * minus
            der += -1j * a * a * minus
    if val.ndim:
        return val, der
    return complex(val), complex(der)


def eigenvalue_seeds(beta, n_max):
    """Asymptotic ray seeds kappa_n + i log(beta), kappa_n = pi(2n - sgn(n)/3),
    for n = -n_max..-1, 1..n_max, as a list of (n, seed)."""
    beta = _check_beta(beta, positive=True)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    logb = math.log(beta)
    out = []
    for n in list(range(-n_max, 0)) + list(range(1, n_max + 1)):
        kappa = math.pi * (2 * n - math.copysign(1.0, n) / 3.0)
        out.append((n, complex(kappa, logb)))
    return out


# ---------------------------------------------------------------------------
# scaled exponential sums

def _scaled_expsum(terms):
    """Evaluate sum coef_j * e^{exp_j} as (mantissa, logscale)."""
    finite = [(c, e) for c, e in terms if c != 0]
    if not finite:
        return 0.0 + 0.0j, 0.0
    s = max(e.real for _, e in finite)
    m = sum(c * np.exp(e - s) for c, e in finite)
    return complex(m), float(s)


def _amp_exponents(k):
    """Exponents of the six amplitude exponentials e^{-i a^{j+l} k}."""
    return [[-1j * _A[(j + l) % 3] * k for l in (1, 2)] for j in range(3)]


def _eigscale(k):
    """Tight bound on the log-magnitude of the six-exponential eigenfunction
    terms e^{-i a^j k x - i a^{j+l} k} over x in [0,1]."""
    best = -math.inf
    for j in range(3):
        px = (-1j * _A[j] * k).real
        for l in (1, 2):
            q = (-1j * _A[(j + l) % 3] * k).real
            best = max(best, q, px + q)
    return best


@dataclass(frozen=True)
class SpectralPair:
    """One eigenvalue k^3 with its zero k of the characteristic function,
    the three-exponential amplitudes, the conjugate adjoint zero, and the
    biorthogonal normalization <X, X*> stored in scaled form."""

    index: int
    k: complex
    eigenvalue: complex
    adjoint_k: complex
    amp_scaled: tuple
    amp_logscale: float
    norm_scaled: complex
    norm_logscale: float
    residual: float
    scale: float

    @property
    def amplitudes(self):
        with np.errstate(over="ignore"):
            f = math.exp(self.amp_logscale) if self.amp_logscale < 700 else math.inf
        return tuple(a * f for a in self.amp_scaled)

    @property
    def normalization(self):
        if self.norm_logscale > 700:
            return self.norm_scaled * math.inf
        return self.norm_scaled * math.exp(self.norm_logscale)


def _normalization_terms(k):
    """Closed-form <X, X*> as a list of (coef, exponent) entries.

    Diagonal (j + r = 0 mod 3) products integrate to 1; the rest pick up
    (e^{-ik(a^j - a^{-r})} - 1)/(-ik(a^j - a^{-r})).
    """
    terms = []
    for j in range(3):
        for r in range(3):
            diag = (j + r) % 3 == 0
            d = _A[j] - _A[(-r) % 3]
            den = -1j * k * d if not diag else None
            for a, sa in ((1, 1.0), (2, -1.0)):
                for b, sb in ((1, 1.0), (2, -1.0)):
                    sgn = sa * sb
                    base = -1j * _A[(j + a) % 3] * k + 1j * _A[(-(r + b)) % 3] * k
                    if diag:
                        terms.append((sgn, base))
                    else:
                        terms.append((sgn / den, base - 1j * k * d))
                        terms.append((-sgn / den, base))
    return terms


def _normalization_scaled(k):
    return _scaled_expsum(_normalization_terms(k))


def biorthogonal_normalization(pair):
    """Exact closed-form <X_n, X_n*>; raises NearDegenerateError when the
    value is below 1e-12 * e^{sqrt(3)|k|} (a non-simple eigenvalue)."""
    m, s = _normalization_scaled(pair.k)
    _degeneracy_check(pair.k, m, s)
    if s > 700:
        return m * math.inf
    return m * math.exp(s)


def _degeneracy_check(k, m, s):
    if abs(m) == 0.0 or math.log(abs(m)) + s < math.log(DEGENERACY_FLOOR) + SQRT3 * abs(k):
        raise NearDegenerateError(f"normalization at k={k} is degenerate")


def make_pair(beta, index, k, residual=0.0):
    """Assemble a SpectralPair from a polished zero of the characteristic
    function.  Raises NearDegenerateError for (near) non-simple pairs."""
    beta = _check_beta(beta, positive=True)
    k = complex(k)
    exps = _amp_exponents(k)
    amp_log = max(e.real for row in exps for e in row)
    amp_scaled = tuple(np.exp(row[0] - amp_log) - np.exp(row[1] - amp_log) for row in exps)
    m, s = _normalization_scaled(k)
    _degeneracy_check(k, m, s)
    return SpectralPair(
        index=int(index),
        k=k,
        eigenvalue=k ** 3,
        adjoint_k=k.conjugate(),
        amp_scaled=amp_scaled,
        amp_logscale=float(amp_log),
        norm_scaled=m,
        norm_logscale=float(s),
        residual=float(residual),
        scale=float(_eigscale(k)),
    )


def eigenfunction_eval(pair, x, order=0, adjoint=False, scaled=False):
    """Evaluate X_n (or the adjoint X_n*) and derivatives on [0,1].

    Parameters
    ----------
    pair : SpectralPair
    x : scalar or ndarray in [0,1]
    order : derivative order m >= 0; each term picks up (-i a^j k)^m
    adjoint : use the conjugated zero (same formula)
    scaled : return X * e^{-sigma} with sigma = pair-specific log scale,
        which never overflows; the plain value overflows for huge |k|.

    Returns the value (ndarray if x is an array).  The scaled variant of
    the primal uses ``pair.scale``; the adjoint computes its own scale.
    """
    ks = pair.adjoint_k if adjoint else pair.k
    sigma = _eigscale(ks) if adjoint else pair.scale
    xs = np.asarray(x, dtype=float)
    out = np.zeros(xs.shape, dtype=complex)
    for j in range(3):
        pref = (-1j * _A[j] * ks) ** order if order else 1.0
        for l, sgn in ((1, 1.0), (2, -1.0)):
            expo = -1j * _A[j] * ks * xs - 1j * _A[(j + l) % 3] * ks - sigma
            out += sgn * pref * np.exp(expo)
    if not scaled:
        with np.errstate(over="ignore"):
            out = out * (math.exp(sigma) if sigma < 700 else math.inf)
    return out if out.ndim else complex(out)


def boundary_residual(beta, pair):
    """Scaled defect |X'(1) - beta X'(0)| / (|k| max_j |A_j|); vanishes w.r.t.
    the coupling exactly when k is a true zero."""
    d1 = eigenfunction_eval(pair, 1.0, order=1, scaled=True)
    d0 = eigenfunction_eval(pair, 0.0, order=1, scaled=True)
    amp = max(abs(a) for a in pair.amp_scaled)
    # amp carries e^{-amp_logscale}; derivatives carry e^{-pair.scale}
    rescale = math.exp(min(pair.amp_logscale - pair.scale, 0.0))
    return abs(d1 - beta * d0) / (abs(pair.k) * amp * rescale + 1e-300)


def _inner_adjoint_scaled(u0, pair):
    """<u0, X_n*> = sum_r B_r * transform(u0; -a^{-r} k) as (mantissa, logscale),
    with exponents of the transform and of B_r merged before exp."""
    k = pair.k
    terms = []
    for r in range(3):
        w = -_A[(-r) % 3] * k
        for y, coef in piecewise.exp_transform_terms(u0, w):
            # e^{-i w y} = e^{i a^{-r} k y}
            base = 1j * _A[(-r) % 3] * k * y
            for b, sb in ((1, 1.0), (2, -1.0)):
                terms.append((sb * coef, base + 1j * _A[(-(r + b)) % 3] * k))
    return _scaled_expsum(terms)


def inner_with_adjoint(u0, pair):
    """Closed-form inner product <u0, X_n*> = integral u0 conj(X_n*) dx."""
    m, s = _inner_adjoint_scaled(u0, pair)
    if s > 700:
        return m * math.inf
    return m * math.exp(s)


# ---------------------------------------------------------------------------
# spectrum enumeration

def _vector_newton(beta, seeds, max_iter=60):
    """Simultaneous Newton on the rescaled characteristic function."""
    z = np.array(seeds, dtype=complex)
    active = np.ones(z.shape, dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        val, der = characteristic_scaled(beta, z[active])
        step = val / der
        z[active] -= step
        zz = z[active]
        done = np.abs(step) < 1e-13 * (1.0 + np.abs(zz))
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    return z, active.copy()  # True entries never converged


def default_near_origin_region(beta, min_diameter=1e-3):
    """Rectangle [-10,10] x [-max(10, 2|log beta|), 10]i; wide enough to catch
    the imaginary-segment zeros that appear for small beta."""
    depth = max(10.0, 2.0 * abs(math.log(beta))) if beta > 0 else 10.0
    return Region.rectangle(-10.0, 10.0, -depth, 10.0, min_diameter=min_diameter)


def _canonical_orbit_rep(k):
    """The zero set is invariant under k -> a k and the whole orbit shares one
    eigenvalue k^3 and one eigenfunction; report the rotation with maximal
    imaginary part (ties: maximal real part)."""
    orbit = [k, _A[1] * k, _A[2] * k]
    return max(orbit, key=lambda z: (z.imag, z.real))


def enumerate_spectrum(beta, n_max, near_origin_region=None, residual_tol=RAY_RESIDUAL_TOL):
    """Enumerate eigenvalue data: polished ray zeros for n = +-1..+-n_max plus
    deduplicated argument-principle finds near the origin.

    Ray seeds whose Newton polish leaves the seed's neighbourhood (which
    happens for small beta at low |n|, before the ray asymptotics apply)
    are dropped with a warning; the underlying zeros, if inside the
    near-origin region, are still picked up there.  k = 0 is excluded: it
    is a double zero of the characteristic function but not the cube root
    of an eigenvalue.  Orbits under the 120-degree rotation are collapsed
    to a canonical representative since they carry the same eigenvalue.
    """
    beta = _check_beta(beta, positive=True)
    seeds = eigenvalue_seeds(beta, n_max)
    z, failed = _vector_newton(beta, [s for _, s in seeds])
    pairs = []
    ray_ks = []
    f = lambda k: characteristic_scaled(beta, k)[0]
    for (n, seed), root, bad in zip(seeds, z, failed):
        resid = abs(f(complex(root)))
        if bad or abs(root - seed) > NEWTON_BASIN or resid > residual_tol:
            warnings.warn(
                f"ray seed n={n} did not settle near its asymptote for beta={beta}",
                stacklevel=2,
            )
            continue
        ray_ks.append(complex(root))
        pairs.append((n, complex(root), resid))

    region = near_origin_region or default_near_origin_region(beta)
    fp = lambda k: characteristic_scaled(beta, k)[1]
    report = find_zeros(f, fp, region, residual_tol=residual_tol)
    extras = []
    origin_radius = max(ORIGIN_EXCLUSION, 1.5 * region.min_diameter)
    for root, resid, flagged, wind in zip(
        report.roots, report.residuals, report.multiplicity_flags, report.windings
    ):
        if abs(root) < origin_radius:
            continue  # the double zero at the origin (never an eigenvalue)
        if flagged:
            warnings.warn(f"unresolved multiplicity near k={root}; pair skipped", stacklevel=2)
            continue
        rep = _canonical_orbit_rep(root)
        polished = newton_polish(f, fp, rep)
        if polished is not None:
            rep = polished
        # duplicate resolution: keep the lower-residual version of any orbit
        tol = 1e-6 * (1.0 + abs(rep))
        if any(abs(rep - kk) < tol or abs(rep - _canonical_orbit_rep(kk)) < tol for kk in ray_ks):
            continue
        r_res = abs(f(rep))
        dup = next((e for e in extras if abs(e[0] - rep) < tol), None)
        if dup is not None:
            if r_res < dup[1]:
                dup[0], dup[1] = rep, r_res
            continue
        extras.append([rep, r_res])

    extras.sort(key=lambda e: (abs(e[0]), e[0].real, e[0].imag))
    out = []
    for n, root, resid in pairs:
        out.append((n, root, resid))
    for i, (root, resid) in enumerate(extras):
        out.append((n_max + 1 + i, root, resid))

    result = []
    for n, root, resid in out:
        try:
            result.append(make_pair(beta, n, root, resid))
        except NearDegenerateError:
            warnings.warn(f"near-degenerate pair at k={root} excluded", stacklevel=2)
    result.sort(key=lambda p: (abs(p.index), -p.index))
    return result
