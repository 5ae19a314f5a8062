import numpy as np
import pytest

from airybvp.exceptions import BoundaryZeroError
from airybvp.rootfinding import Region, find_zeros, winding_count


def square(half=2.0, min_diameter=1e-6):
    return Region.rectangle(-half, half, -half, half, min_diameter=min_diameter)


def test_winding_simple_zero():
    reg = Region.rectangle(-1, 1, -1, 1)
    assert winding_count(lambda k: k, reg, 64) == 1


def test_winding_double_zero():
    reg = Region.rectangle(-1, 1, -1, 1)
    assert winding_count(lambda k: k * k, reg, 64) == 2


def test_winding_no_zero():
    reg = Region.rectangle(2, 3, 2, 3)
    assert winding_count(lambda k: k, reg, 64) == 0


def test_winding_boundary_zero_raises():
    reg = Region.rectangle(-1, 1, -1, 1)
    with pytest.raises(BoundaryZeroError):
        winding_count(lambda k: k - 1.0, reg, 64)  # zero at a boundary vertex


def test_winding_pole_counts_negative():
    # argument principle counts zeros minus poles
    reg = Region.rectangle(-1, 1, -1, 1)
    assert winding_count(lambda k: 1.0 / (k - 0.2), reg, 64) == -1


def test_winding_additive_under_bisection():
    rng = np.random.default_rng(11)
    roots = rng.uniform(-1.8, 1.8, 5) + 1j * rng.uniform(-1.8, 1.8, 5)

    def f(k):
        k = np.asarray(k, dtype=complex)
        out = np.ones(k.shape, dtype=complex)
        for r in roots:
            out = out * (k - r)
        return out

    whole = winding_count(f, square(), 256)
    left = winding_count(f, Region.rectangle(-2, 0.013, -2, 2), 256)
    right = winding_count(f, Region.rectangle(0.013, 2, -2, 2), 256)
    assert whole == 5
    assert left + right == whole


def test_find_zeros_cube_roots_of_unity():
    f = lambda k: k ** 3 - 1.0
    fp = lambda k: 3.0 * k ** 2
    report = find_zeros(f, fp, square(), residual_tol=1e-12)
    assert len(report.roots) == 3
    expected = sorted(np.exp(2j * np.pi * np.arange(3) / 3), key=lambda z: (z.real, z.imag))
    for root, ref, resid, flag in zip(
        report.roots, expected, report.residuals, report.multiplicity_flags
    ):
        assert abs(root - ref) < 1e-12
        assert resid <= 1e-12
        assert not flag


def test_find_zeros_reports_double_zero_flagged():
    f = lambda k: k * k
    fp = lambda k: 2.0 * k
    report = find_zeros(f, fp, square(min_diameter=1e-4), residual_tol=1e-12)
    assert sum(report.windings) == 2
    assert any(report.multiplicity_flags)
    flagged = [r for r, fl in zip(report.roots, report.multiplicity_flags) if fl]
    assert all(abs(r) < 1e-3 for r in flagged)


def test_find_zeros_zero_on_initial_cut_line():
    # zeros straddle the first bisection cut; the shift logic must recover all
    roots = [0.0 + 0.0j, -1.0 + 0.5j, 1.0 - 0.5j, 0.0 + 1.2j]

    def f(k):
        k = np.asarray(k, dtype=complex)
        out = np.ones(k.shape, dtype=complex)
        for r in roots:
            out = out * (k - r)
        return out

    def fp(k):
        k = np.asarray(k, dtype=complex)
        out = np.zeros(k.shape, dtype=complex)
        for i in range(len(roots)):
            term = np.ones(k.shape, dtype=complex)
            for j, r in enumerate(roots):
                if j != i:
                    term = term * (k - r)
            out = out + term
        return out

    report = find_zeros(f, fp, square(), residual_tol=1e-10)
    assert len(report.roots) == 4
    for r in roots:
        assert min(abs(r - z) for z in report.roots) < 1e-9


def test_find_zeros_triangle_region():
    tri = Region((complex(-2, -1), complex(2, -1), complex(0, 2)), 1e-6)
    a, b = 0.3 + 0.2j, -0.4 + 0.1j
    f = lambda k: (k - a) * (k - b)
    fp = lambda k: 2.0 * k - (a + b)
    report = find_zeros(f, fp, tri, residual_tol=1e-12)
    assert len(report.roots) == 2
    for r in (a, b):
        assert min(abs(r - z) for z in report.roots) < 1e-12


def test_find_zeros_deterministic():
    f = lambda k: k ** 3 - 1.0
    fp = lambda k: 3.0 * k ** 2
    a = find_zeros(f, fp, square(), residual_tol=1e-12)
    b = find_zeros(f, fp, square(), residual_tol=1e-12)
    assert a == b


def test_roots_sorted_lexicographically():
    f = lambda k: (k - 1.0) * (k + 1.0) * (k - 1j)
    fp = lambda k: 3.0 * k ** 2 - ((1.0) * (-1.0) + (1.0) * (-1j) + (-1.0) * (-1j))

    # derivative of (k-1)(k+1)(k-i) = 3k^2 - 2ik - 1
    def fp(k):  # noqa: F811
        return 3.0 * k ** 2 - 2j * k - 1.0

    report = find_zeros(f, fp, square(), residual_tol=1e-11)
    keys = [(r.real, r.imag) for r in report.roots]
    assert keys == sorted(keys)


def test_region_validation():
    with pytest.raises(ValueError):
        Region((0.0, 1.0), 1e-6)
    with pytest.raises(ValueError):
        Region.rectangle(0, 1, 0, 1, min_diameter=0.0)
    with pytest.raises(ValueError):
        Region.rectangle(1, 0, 0, 1)


def test_region_contains():
    reg = Region.rectangle(0, 1, 0, 1)
    assert reg.contains(0.5 + 0.5j)
    assert reg.contains(0.0 + 0.5j)  # boundary counts as inside
    assert not reg.contains(2.0 + 0.5j)
    assert not reg.contains(0.5 - 0.5j)
