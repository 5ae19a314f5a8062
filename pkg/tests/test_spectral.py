import math
import warnings

import numpy as np
import pytest

from airybvp import piecewise as pw
from airybvp import spectral as sp
from airybvp.exceptions import BetaZeroError, NearDegenerateError
from airybvp.quadrature import composite_gauss_legendre
from airybvp.rootfinding import Region, newton_polish
from conftest import quad_complex

SQRT3 = math.sqrt(3.0)

# Frozen oracle roots (independent 40-digit polishing of the characteristic
# function written out separately in _mpmath_root below).
ORACLE_HALF = {
    1: 5.209034744930010200214125 - 0.6829708371355025885362651j,
    2: 11.51929042867653579287404 - 0.6931876211385834691473553j,
    3: 17.80235786175489423051079 - 0.6931470052449814018637139j,
}
ORACLE_ONE_K1 = 5.225154248768964631464534  # real-axis bisection at beta = 1


def _mpmath_root(beta, seed, dps=40):
    import mpmath as mp

    with mp.workdps(dps):
        a = mp.e ** (2j * mp.pi / 3)

        def delta(k):
            return (
                mp.mpf(beta)
                * (mp.e ** (-1j * k) + a * mp.e ** (-1j * a * k) + a ** 2 * mp.e ** (-1j * a ** 2 * k))
                + mp.e ** (1j * k)
                + a * mp.e ** (1j * a * k)
                + a ** 2 * mp.e ** (1j * a ** 2 * k)
            )

        return complex(mp.findroot(delta, mp.mpc(seed)))


def test_frozen_oracles_reproduce():
    for n, ref in ORACLE_HALF.items():
        seed = math.pi * (2 * n - 1.0 / 3.0) + 1j * math.log(0.5)
        assert abs(_mpmath_root(0.5, seed) - ref) < 1e-18 * (1 + abs(ref))


def test_characteristic_zero_at_origin():
    for beta in (0.0, 1e-6, 0.5, 1.0):
        assert abs(sp.characteristic(beta, 0.0)) < 1e-14


def test_characteristic_rejects_bad_coupling():
    with pytest.raises(ValueError):
        sp.characteristic(1.5, 1.0)
    with pytest.raises(ValueError):
        sp.characteristic(-0.1, 1.0)


def test_rotation_identity_random():
    rng = np.random.default_rng(21)
    k = rng.uniform(-30, 30, 1000) + 1j * rng.uniform(-30, 30, 1000)
    for beta in (1e-6, 0.5, 1.0):
        lhs = sp.characteristic(beta, sp.ALPHA * k)
        rhs = sp.ALPHA ** 2 * sp.characteristic(beta, k)
        assert np.max(np.abs(lhs - rhs) / (1.0 + np.abs(rhs))) < 1e-12


def test_reflection_identity():
    rng = np.random.default_rng(22)
    k = rng.uniform(-20, 20, 200) + 1j * rng.uniform(-20, 20, 200)
    for beta in (0.3, 0.9):
        lhs = sp.characteristic(beta, -np.conj(k))
        rhs = np.conj(sp.characteristic(beta, k))
        assert np.max(np.abs(lhs - rhs) / (1.0 + np.abs(rhs))) < 1e-12


def test_scaled_characteristic_matches_unscaled_argument():
    rng = np.random.default_rng(23)
    k = rng.uniform(-10, 10, 50) + 1j * rng.uniform(-10, 10, 50)
    plain = sp.characteristic(0.5, k)
    scaled, _ = sp.characteristic_scaled(0.5, k)
    # positive real rescaling: identical arguments
    assert np.max(np.abs(np.angle(plain) - np.angle(scaled))) < 1e-12


def test_derivative_consistent_with_finite_differences():
    rng = np.random.default_rng(24)
    for k in rng.uniform(-5, 5, 8) + 1j * rng.uniform(-5, 5, 8):
        h = 1e-6
        fd = (sp.characteristic(0.7, k + h) - sp.characteristic(0.7, k - h)) / (2 * h)
        assert abs(sp.characteristic_deriv(0.7, k) - fd) < 1e-6 * (1 + abs(fd))


def test_seeds_examples():
    seeds = dict(sp.eigenvalue_seeds(1.0, 2))
    assert abs(seeds[1] - 5.0 * math.pi / 3.0) < 1e-15
    assert abs(seeds[-1] + 5.0 * math.pi / 3.0) < 1e-15
    seeds = dict(sp.eigenvalue_seeds(math.exp(-1.0), 2))
    assert abs(seeds[2] - (11.0 * math.pi / 3.0 - 1.0j)) < 1e-14


def test_seeds_reject_beta_zero():
    with pytest.raises(BetaZeroError):
        sp.eigenvalue_seeds(0.0, 3)


def test_delta_small_at_remote_seed_and_newton_reaches_a_zero():
    # For very small coupling the first asymptotic seed is far from any zero,
    # but the function there is tiny relative to its local scale and Newton
    # still lands on a genuine (segment-family) zero.
    beta = 1e-6
    seed = 5.0 * math.pi / 3.0 + 1j * math.log(beta)
    plain = abs(sp.characteristic(beta, seed))
    assert plain / math.exp(SQRT3 * abs(seed)) < 1e-3
    f = lambda k: sp.characteristic_scaled(beta, k)[0]
    fp = lambda k: sp.characteristic_scaled(beta, k)[1]
    z = newton_polish(f, fp, seed)
    assert z is not None
    assert abs(f(z)) < 1e-8


def test_winding_locates_first_ray_zero_small_beta():
    # At beta = 1e-6 the first horizontal-ray zero sits near kappa_5 + i log
    # beta ~ (30.4, -13.8); the region [4,7] x [-15,-12] (around the n = 1
    # seed) contains no zero at all, since the asymptote needs
    # sqrt(3) kappa_n > 3 |log beta| and the small-|k| zeros belong to the
    # rotated imaginary-segment family instead.
    from airybvp.rootfinding import winding_count

    beta = 1e-6
    f = lambda k: sp.characteristic_scaled(beta, k)[0]
    empty = Region.rectangle(4.0, 7.0, -15.0, -12.0)
    assert winding_count(f, empty, 64) == 0
    hit = Region.rectangle(29.4, 31.4, -14.8, -12.8)
    assert winding_count(f, hit, 64) == 1


def test_enumerate_beta_half_matches_oracle():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = {p.index: p for p in sp.enumerate_spectrum(0.5, 3)}
    for n, ref in ORACLE_HALF.items():
        assert abs(pairs[n].k - ref) < 1e-10
        assert abs(pairs[-n].k + np.conj(ref)) < 1e-10  # reflection closure


def test_enumerate_beta_one_real_and_counts(indicator):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = sp.enumerate_spectrum(1.0, 5)
    assert len(pairs) == 10
    assert max(abs(p.k.imag) for p in pairs) < 1e-9
    k1 = next(p.k for p in pairs if p.index == 1)
    assert abs(k1 - ORACLE_ONE_K1) < 1e-6


def test_enumerate_near_origin_segment_zeros_small_beta():
    # For small coupling extra zeros appear near the positive imaginary axis.
    # They track the uncoupled-case ladder (2n + 1/3) pi / sqrt(3); the
    # lowest ones for beta = 0.01 sit close to it with a visible shift.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = sp.enumerate_spectrum(0.01, 10)
    aux = [p for p in pairs if p.index > 10]
    assert len(aux) >= 1
    ladder = [(2 * n + 1.0 / 3.0) * math.pi / SQRT3 for n in range(1, 4)]
    for p in aux:
        assert abs(p.k.real) < 1e-9
        assert min(abs(p.k.imag - y) for y in ladder) < 0.3


def test_segment_ladder_tiny_beta():
    # sweep the imaginary-axis strip at beta = 1e-6: the zeros follow the
    # uncoupled ladder (2n + 1/3) pi / sqrt(3)
    from airybvp.rootfinding import find_zeros

    beta = 1e-6
    f = lambda k: sp.characteristic_scaled(beta, k)[0]
    fp = lambda k: sp.characteristic_scaled(beta, k)[1]
    strip = Region.rectangle(-0.5, 0.5, 0.3, 12.0, min_diameter=1e-3)
    report = find_zeros(f, fp, strip, residual_tol=1e-10)
    found = sorted(r.imag for r in report.roots)
    ladder = [(2 * n + 1.0 / 3.0) * math.pi / SQRT3 for n in (1, 2, 3)]
    assert len(found) == 3
    for got, ref in zip(found, ladder):
        assert abs(got - ref) < 5e-3


def test_strip_sweep_finds_first_three_ray_zeros():
    # the strip Re in [1,20], Im in [2 log(1/2), 0] contains exactly the ray
    # zeros n = 1,2,3 (rotated copies sit far below it)
    from airybvp.rootfinding import find_zeros

    beta = 0.5
    f = lambda k: sp.characteristic_scaled(beta, k)[0]
    fp = lambda k: sp.characteristic_scaled(beta, k)[1]
    strip = Region.rectangle(1.0, 20.0, 2.0 * math.log(0.5), 0.0, min_diameter=1e-4)
    report = find_zeros(f, fp, strip, residual_tol=1e-10)
    assert len(report.roots) == 3
    found = sorted(report.roots, key=lambda z: z.real)
    for z, n in zip(found, (1, 2, 3)):
        assert abs(z - ORACLE_HALF[n]) < 1e-9


def test_spectrum_rotation_closure():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = sp.enumerate_spectrum(0.5, 6)
    f = lambda k: sp.characteristic_scaled(0.5, k)[0]
    fp = lambda k: sp.characteristic_scaled(0.5, k)[1]
    for p in pairs:
        rotated = sp.ALPHA * p.k
        z = newton_polish(f, fp, rotated)
        assert z is not None and abs(z - rotated) < 1e-8


def test_seed_distance_decreases_with_index():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = {p.index: p for p in sp.enumerate_spectrum(0.5, 10)}
    seeds = dict(sp.eigenvalue_seeds(0.5, 10))
    dists = [abs(pairs[n].k - seeds[n]) for n in range(3, 11)]
    assert all(b <= a + 1e-12 for a, b in zip(dists, dists[1:]))


def test_eigenfunction_boundary_zeros_any_k():
    # X(0) = X(1) = 0 hold identically in k, zero of the characteristic or not
    pair = sp.make_pair(0.5, 99, 4.0 - 1.0j)
    for x in (0.0, 1.0):
        val = sp.eigenfunction_eval(pair, x, scaled=True)
        assert abs(val) < 1e-14


def test_boundary_residual_small_only_at_true_zeros(spectrum_half):
    for pair in spectrum_half.values():
        assert sp.boundary_residual(0.5, pair) < 1e-8
    off = sp.make_pair(0.5, 98, spectrum_half[1].k + 0.05)
    assert sp.boundary_residual(0.5, off) > 1e-4


def test_eigenfunction_derivative_orders(spectrum_half):
    p = spectrum_half[2]
    h = 1e-5
    x0 = 0.4
    fd = (
        sp.eigenfunction_eval(p, x0 + h, scaled=True)
        - sp.eigenfunction_eval(p, x0 - h, scaled=True)
    ) / (2 * h)
    d1 = sp.eigenfunction_eval(p, x0, order=1, scaled=True)
    assert abs(d1 - fd) < 1e-5 * (1 + abs(d1))


def test_adjoint_uses_conjugate_zero(spectrum_half):
    p = spectrum_half[3]
    assert p.adjoint_k == np.conj(p.k)
    assert abs(p.eigenvalue - p.k ** 3) < 1e-12 * abs(p.k) ** 3


def test_normalization_matches_quadrature(spectrum_half):
    x, w = composite_gauss_legendre(64, 32)
    for n in (1, 4, 10):
        p = spectrum_half[n]
        Xn = sp.eigenfunction_eval(p, x)
        Xs = sp.eigenfunction_eval(p, x, adjoint=True)
        quad = np.sum(w * Xn * np.conj(Xs))
        assert abs(p.normalization - quad) < 1e-8 * abs(quad)


def test_normalization_leading_order(spectrum_half):
    # modulus approaches e^{sqrt3 |k_n|}; at n = 10 the relative gap is the
    # phase-modulus correction ~ sqrt3 (log beta)^2 / (2 kappa) < 1e-2
    p = spectrum_half[10]
    ref = math.exp(SQRT3 * abs(p.k))
    assert abs(abs(p.normalization) - ref) / ref < 1e-2


def test_biorthogonality_distinct_pairs(spectrum_half):
    x, w = composite_gauss_legendre(64, 32)
    for n, m in ((1, 2), (2, 5), (3, 7)):
        Xn = sp.eigenfunction_eval(spectrum_half[n], x)
        Xs = sp.eigenfunction_eval(spectrum_half[m], x, adjoint=True)
        num = abs(np.sum(w * Xn * np.conj(Xs)))
        den = math.sqrt(np.sum(w * np.abs(Xn) ** 2)) * math.sqrt(
            np.sum(w * np.abs(Xs) ** 2)
        )
        assert num / den < 1e-8


def test_near_degenerate_raises():
    with pytest.raises(NearDegenerateError):
        sp.make_pair(0.5, 97, 1e-4 + 0.0j)  # near the spurious origin zero


def test_inner_with_adjoint_zero_datum(spectrum_half):
    zero = pw.PiecewiseDatum((0.0, 1.0), ((0.0,),))
    assert abs(sp.inner_with_adjoint(zero, spectrum_half[1])) == 0.0


def test_inner_with_adjoint_matches_quadrature(indicator, spectrum_half):
    p = spectrum_half[1]
    val = sp.inner_with_adjoint(indicator, p)
    ref = quad_complex(
        lambda x: indicator(x) * np.conj(sp.eigenfunction_eval(p, float(x), adjoint=True)),
        0.0,
        1.0,
        points=[1.0 / 3.0, 2.0 / 3.0],
        epsabs=1e-13,
        epsrel=1e-13,
    )
    assert abs(val - ref) < 1e-10 * (1 + abs(ref))


def test_inner_with_adjoint_biorthogonal_interpolant(spectrum_half):
    # a sampled piecewise-cubic interpolant of X_2 is nearly orthogonal to
    # the adjoint of X_1; the residue is bounded by the interpolation error
    p2, p1 = spectrum_half[2], spectrum_half[1]
    M = 40
    bps = np.linspace(0.0, 1.0, M + 1)
    pieces = []
    err = 0.0
    for i in range(M):
        xs = np.linspace(bps[i], bps[i + 1], 4)
        ys = np.array([sp.eigenfunction_eval(p2, float(xv)) for xv in xs])
        cr = np.polynomial.polynomial.polyfit(xs, ys.real, 3)
        ci = np.polynomial.polynomial.polyfit(xs, ys.imag, 3)
        pieces.append(tuple(cr + 1j * ci))
        mid = np.linspace(bps[i], bps[i + 1], 9)
        fit = np.polynomial.polynomial.polyval(mid, cr + 1j * ci)
        ref = np.array([sp.eigenfunction_eval(p2, float(xv)) for xv in mid])
        err = max(err, np.max(np.abs(fit - ref)))
    datum = pw.PiecewiseDatum(tuple(bps), tuple(pieces))
    x, w = composite_gauss_legendre(64, 16)
    X1s = sp.eigenfunction_eval(p1, x, adjoint=True)
    norm1 = math.sqrt(np.sum(w * np.abs(X1s) ** 2))
    val = abs(sp.inner_with_adjoint(datum, p1))
    assert val <= 2.0 * err * norm1


def test_spectral_pair_is_immutable(spectrum_half):
    p = spectrum_half[1]
    with pytest.raises(Exception):
        p.k = 0.0
