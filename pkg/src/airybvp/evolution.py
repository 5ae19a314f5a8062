"""Series solutions u(x,t) = sum_n e^{-i k_n^3 t} X_n(x) <u0,X_n*>/<X_n,X_n*>
and numerical verification of the energy estimates.

Coefficients and eigenfunctions are kept in the rescaled regime (see
``spectral``): the stored coefficient of mode n is c_n e^{sigma_n}, which
is O(1), and eigenfunctions are evaluated as X_n e^{-sigma_n}, so the
products are exact while neither factor can overflow.

Energy identity: multiplying the equation by 2u and integrating by parts,
the only surviving boundary term is [u_x^2]_0^1 = (beta^2 - 1) u_x(0,t)^2,
so d/dt ||u||^2 = -(1 - beta^2) u_x(0,t)^2 and

    ||u(t)||^2 + (1 - beta^2) * integral(u_x(0,s)^2, 0..t) = ||u0||^2

holds exactly for every truncated series (each truncation is itself an
exact solution with projected initial datum).  Note the coupling enters
squared: the factor is (1-beta)(1+beta), which numerics confirm to ten
digits; the looser bounds with constant 1/(1-beta) remain valid.

Time integrals of squared boundary traces are evaluated in closed form
mode-pair by mode-pair: integral e^{-i(k_n^3+k_m^3)s} ds is elementary,
and the integrand's boundary layer near s = 0 (fast modes dying within
~1/(3|log beta| kappa_n^2)) makes fixed-step quadrature unreliable there.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import spectral
from .exceptions import IllPosedGrowthError
from .quadrature import composite_gauss_legendre

TERM_SKIP = 1e-16        # damped terms below this times the running max are skipped
GROWTH_GUARD = 700.0     # Re exponent cap; beyond this the spectrum must be wrong
DEFAULT_PANELS = 64
DEFAULT_NODES = 32
TIME_STEPS = 512         # fallback trapezoid resolution for time integrals

_trapezoid = getattr(np, "trapezoid", None) or np.trapz  # numpy < 2 spelling


def default_n_max(beta):
    """Truncation defaults: 614 modes for the conservative beta = 1 problem,
    120 for 0 < beta < 1."""
    return 614 if beta == 1.0 else 120


@dataclass
class SolutionSeries:
    """Truncated eigenfunction expansion for one (beta, datum) pair.

    ``coeff_scaled[i]`` holds c_n e^{sigma_n} for ``pairs[i]``; the plain
    coefficients are exposed via :attr:`coefficients` (they underflow to 0
    for very large |n|, which is harmless for inspection).
    """

    beta: float
    pairs: tuple
    coeff_scaled: np.ndarray
    datum: object
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def coefficients(self):
        with np.errstate(under="ignore"):
            return self.coeff_scaled * np.exp(-np.array([p.scale for p in self.pairs]))

    def eigenvalues(self):
        return np.array([p.eigenvalue for p in self.pairs])

    def evaluate(self, x, t):
        """u(x,t) for scalar/array x at a single time t >= 0.

        At t = 0 the series converges only in the mean for discontinuous
        data; pointwise values there carry the usual oscillatory
        truncation overshoot near jumps.
        """
        res = self.evaluate_grid(np.atleast_1d(np.asarray(x, dtype=float)), [t])[0]
        return res if np.ndim(x) else complex(res[0])

    def evaluate_grid(self, xs, ts):
        """u on the tensor grid ts x xs; returns array (len(ts), len(xs))."""
        xs = np.asarray(xs, dtype=float)
        ts = np.asarray(ts, dtype=float)
        if np.any(ts < 0):
            raise ValueError("t must be nonnegative")
        P = self._mode_matrix(xs)
        lam = self.eigenvalues()
        out = np.empty((ts.size, xs.size), dtype=complex)
        rowmax = np.max(np.abs(P), axis=1, initial=0.0)
        for i, t in enumerate(ts):
            growth = np.imag(lam) * t
            if np.any(growth > GROWTH_GUARD):
                raise IllPosedGrowthError(
                    f"series term grows like e^{np.max(growth):.1f} at t={t}"
                )
            with np.errstate(under="ignore"):
                phase = np.exp(-1j * lam * t)
            weight = np.abs(phase) * rowmax
            keep = weight >= TERM_SKIP * (np.max(weight) if weight.size else 0.0)
            out[i] = phase[keep] @ P[keep]
        return out

    def _mode_matrix(self, xs):
        key = ("P", xs.shape, float(xs[0]) if xs.size else 0.0,
               float(xs[-1]) if xs.size else 0.0, xs.size)
        hit = self._cache.get(key)
        if hit is not None and np.array_equal(hit[0], xs):
            return hit[1]
        P = np.empty((len(self.pairs), xs.size), dtype=complex)
        for i, p in enumerate(self.pairs):
            P[i] = self.coeff_scaled[i] * spectral.eigenfunction_eval(p, xs, scaled=True)
        self._cache[key] = (xs.copy(), P)
        return P

    def boundary_deriv_coeffs(self):
        """b_n with u_x(0,s) = sum b_n e^{-i k_n^3 s}."""
        b = np.empty(len(self.pairs), dtype=complex)
        for i, p in enumerate(self.pairs):
            b[i] = self.coeff_scaled[i] * spectral.eigenfunction_eval(
                p, 0.0, order=1, scaled=True
            )
        return b


def build_series(beta, u0, n_max=None, near_origin_region=None, pairs=None):
    """Assemble the expansion of ``u0``: pairs from ``enumerate_spectrum``
    (or supplied) with coefficients <u0,X_n*>/<X_n,X_n*>.

    Near-degenerate pairs are excluded with a warning; the expansion
    assumes simple eigenvalues.
    """
    beta = float(beta)
    if n_max is None:
        n_max = default_n_max(beta)
    if pairs is None:
        pairs = spectral.enumerate_spectrum(beta, n_max, near_origin_region)
    entries = []
    for p in pairs:
        mi, si = spectral._inner_adjoint_scaled(u0, p)
        expo = si - p.norm_logscale + p.scale
        if expo > GROWTH_GUARD:
            raise IllPosedGrowthError(f"coefficient overflow at index {p.index}")
        gamma = (mi / p.norm_scaled) * math.exp(expo)
        entries.append((p, gamma))
    entries.sort(key=lambda e: (abs(e[0].k.real), e[0].k.imag, e[0].index))
    return SolutionSeries(
        beta=beta,
        pairs=tuple(e[0] for e in entries),
        coeff_scaled=np.array([e[1] for e in entries], dtype=complex),
        datum=u0,
    )


def l2_norm_at(series, t, n_panels=DEFAULT_PANELS, n_nodes=DEFAULT_NODES):
    """||u(.,t)|| on (0,1) by composite Gauss-Legendre quadrature."""
    x, w = composite_gauss_legendre(n_panels, n_nodes)
    u = series.evaluate_grid(x, [t])[0]
    return float(np.sqrt(np.sum(w * np.abs(u) ** 2)))


def weighted_l2_sq_at(series, t, n_panels=DEFAULT_PANELS, n_nodes=DEFAULT_NODES):
    """integral x |u(x,t)|^2 dx."""
    x, w = composite_gauss_legendre(n_panels, n_nodes)
    u = series.evaluate_grid(x, [t])[0]
    return float(np.sum(w * x * np.abs(u) ** 2))


def _phase_integral(mu, t):
    """integral e^{-i mu s} ds over 0..t, elementwise, stable as mu -> 0."""
    mu = np.asarray(mu, dtype=complex)
    out = np.empty(mu.shape, dtype=complex)
    small = np.abs(mu) * t < 1e-8
    ms = mu[small]
    out[small] = t * (1.0 - 0.5j * ms * t - (ms * t) ** 2 / 6.0)
    mb = mu[~small]
    with np.errstate(under="ignore"):
        out[~small] = (1.0 - np.exp(-1j * mb * t)) / (1j * mb)
    return out


def boundary_flux_integral(series, t, method="exact", n_steps=TIME_STEPS):
    """integral u_x(0,s)^2 ds over 0..t (real part; imaginary part is a
    truncation diagnostic).

    ``method='exact'`` expands the square into mode pairs and integrates
    each e^{-i(k_n^3+k_m^3)s} in closed form.  ``method='trapezoid'`` is
    kept for comparison; it needs the boundary layer near s=0 resolved and
    underestimates badly at feasible step counts.
    """
    if series.beta >= 1.0:
        raise ValueError("boundary flux integral applies to beta < 1")
    b = series.boundary_deriv_coeffs()
    lam = series.eigenvalues()
    if method == "trapezoid":
        s = np.linspace(0.0, t, n_steps + 1)
        with np.errstate(under="ignore"):
            ux = np.exp(-1j * np.outer(s, lam)) @ b
        return float(_trapezoid(np.real(ux) ** 2, s))
    mu = lam[:, None] + lam[None, :]
    phi = _phase_integral(mu, t)
    return float(np.real(b[:, None] * b[None, :] * phi).sum())


def dissipation_integral(series, t, n_panels=DEFAULT_PANELS, n_nodes=DEFAULT_NODES):
    """Space-time dissipation integral of u_x^2 over (0,1) x (0,t), with the
    time direction integrated in closed form."""
    x, w = composite_gauss_legendre(n_panels, n_nodes)
    G = np.empty((len(series.pairs), x.size), dtype=complex)
    for i, p in enumerate(series.pairs):
        G[i] = series.coeff_scaled[i] * spectral.eigenfunction_eval(
            p, x, order=1, scaled=True
        )
    M = (G * w) @ G.T
    lam = series.eigenvalues()
    mu = lam[:, None] + lam[None, :]
    phi = _phase_integral(mu, t)
    return float(np.real(M * phi).sum())


def second_difference_max(series, t, n_points):
    """max over the interior of |second central difference quotient| of
    Re u(.,t) on a uniform (n_points)-point grid; a bounded value under
    grid refinement certifies a twice-differentiable profile."""
    xs = np.linspace(0.0, 1.0, n_points)
    h = xs[1] - xs[0]
    u = np.real(series.evaluate_grid(xs, [t])[0])
    return float(np.max(np.abs(u[2:] - 2.0 * u[1:-1] + u[:-2])) / h ** 2)


def energy_report(series, times, n_panels=DEFAULT_PANELS, n_nodes=DEFAULT_NODES):
    """Check the energy identity and its consequences at the given times.

    Returns a dict with the measured norms plus, for beta < 1, the
    boundary-flux and dissipation integrals, the identity residuals, and
    pass flags for:

    - norm monotonicity (non-increasing within 1e-6 absolute),
    - identity ||u(t)||^2 + (1-beta^2) flux(t) = ||u0||^2 (rel. residual),
    - flux(t) <= ||u0||^2 / (1-beta),
    - weighted norm + 3 * dissipation <= ||u0||^2 / (1-beta).

    For beta = 1 the norms and their relative variation are reported.
    """
    times = sorted(float(t) for t in times)
    beta = series.beta
    norm0_sq = series.datum.l2_norm() ** 2
    norms = [l2_norm_at(series, t, n_panels, n_nodes) for t in times]
    report = {
        "beta": beta,
        "times": times,
        "datum_norm_sq": norm0_sq,
        "norms": norms,
        "monotone_nonincreasing": all(
            b <= a + 1e-6 for a, b in zip(norms, norms[1:])
        ),
    }
    if beta == 1.0:
        mean = float(np.mean(norms))
        report["relative_variation"] = (max(norms) - min(norms)) / mean if mean else 0.0
        return report
    fluxes = [boundary_flux_integral(series, t) for t in times]
    dissip = [dissipation_integral(series, t, n_panels, n_nodes) for t in times]
    weighted = [weighted_l2_sq_at(series, t, n_panels, n_nodes) for t in times]
    bound = norm0_sq / (1.0 - beta)
    energy_coeff = 1.0 - beta ** 2
    identity = [
        abs(n ** 2 + energy_coeff * f - norm0_sq) / norm0_sq
        for n, f in zip(norms, fluxes)
    ]
    report.update(
        {
            "energy_coefficient": energy_coeff,
            "flux_integrals": fluxes,
            "dissipation_integrals": dissip,
            "weighted_norm_sq": weighted,
            "identity_residuals": identity,
            "identity_max_residual": max(identity),
            "flux_bound": bound,
            "flux_bound_ok": all(f <= bound for f in fluxes),
            "weighted_bound_ok": all(
                wt + 3.0 * d <= bound for wt, d in zip(weighted, dissip)
            ),
            "flux_bound_margins": [bound - f for f in fluxes],
            "weighted_bound_margins": [
                bound - (wt + 3.0 * d) for wt, d in zip(weighted, dissip)
            ],
        }
    )
    return report
