"""Zero location for analytic functions via boundary phase-jump counting.

The boundary of a polygonal region is sampled densely and the principal
argument of f is tracked along it.  Counting the wraps of the argument
across the +/-pi branch cut gives, by the argument principle, the number
of zeros enclosed (with multiplicity).  Regions that contain zeros are
bisected recursively until each zero is isolated in its own cell, then
polished by Newton iteration.

Scaling note: multiplying f by any positive real-valued (not necessarily
analytic) function of k leaves every argument, and hence every count,
unchanged.  Callers with exponentially large functions should pass a
rescaled f so that residual tolerances stay meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import BoundaryZeroError, UnresolvedPhaseError

SAMPLE_FLOOR = 1e-150        # |f| below this at a sample means a boundary zero
PHASE_GUARD = 0.90 * np.pi   # wrapped increments above this force denser sampling
BASE_SAMPLES = 32
MAX_SAMPLES = 4096
CUT_SHIFTS = 5               # retries when a cut line lands on (or aliases) a zero
NEWTON_MAX_ITER = 50
NEWTON_STEP_TOL = 1e-13


@dataclass(frozen=True)
class Region:
    """Positively oriented simple polygon with a resolution floor.

    ``min_diameter`` bounds the recursive subdivision: two zeros closer
    than this are reported as one flagged (unresolved) root.
    """

    vertices: tuple
    min_diameter: float = 1e-6

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise ValueError("a region needs at least 3 vertices")
        if not self.min_diameter > 0:
            raise ValueError("min_diameter must be positive")
        object.__setattr__(self, "vertices", tuple(complex(v) for v in self.vertices))

    @classmethod
    def rectangle(cls, re_min, re_max, im_min, im_max, min_diameter=1e-6):
        if not (re_min < re_max and im_min < im_max):
            raise ValueError("degenerate rectangle")
        verts = (
            complex(re_min, im_min),
            complex(re_max, im_min),
            complex(re_max, im_max),
            complex(re_min, im_max),
        )
        return cls(verts, min_diameter)

    def bounding_box(self):
        re = [v.real for v in self.vertices]
        im = [v.imag for v in self.vertices]
        return min(re), max(re), min(im), max(im)

    def diameter(self):
        re_min, re_max, im_min, im_max = self.bounding_box()
        return float(np.hypot(re_max - re_min, im_max - im_min))

    def centroid(self):
        return sum(self.vertices) / len(self.vertices)

    def contains(self, z):
        """Even-odd crossing test; points on the boundary count as inside."""
        z = complex(z)
        v = self.vertices
        n = len(v)
        tol = 1e-12 * (1.0 + self.diameter())
        inside = False
        for i in range(n):
            a, b = v[i], v[(i + 1) % n]
            # on-edge check
            ab = b - a
            az = z - a
            cross = ab.real * az.imag - ab.imag * az.real
            dot = ab.real * az.real + ab.imag * az.imag
            if abs(cross) <= tol * max(abs(ab), 1.0) and -tol <= dot <= abs(ab) ** 2 + tol:
                return True
            if (a.imag > z.imag) != (b.imag > z.imag):
                x_cross = a.real + (z.imag - a.imag) * ab.real / ab.imag
                if x_cross > z.real:
                    inside = not inside
        return inside


@dataclass(frozen=True)
class RootReport:
    """Roots of f in a region.

    ``multiplicity_flags[i]`` is True when the winding count stayed above
    one at the resolution floor; such roots are reported, never resolved,
    and their ``windings`` entry carries the unresolved count.
    """

    roots: tuple
    residuals: tuple
    multiplicity_flags: tuple
    windings: tuple


def _boundary_samples(region, samples_per_edge):
    pts = []
    v = region.vertices
    for i in range(len(v)):
        a, b = v[i], v[(i + 1) % len(v)]
        ts = np.arange(samples_per_edge) / samples_per_edge
        pts.append(a + (b - a) * ts)
    return np.concatenate(pts)


def winding_count(f, region, samples_per_edge=BASE_SAMPLES):
    """Number of zeros of f inside ``region``, counted with multiplicity.

    Proceeding anticlockwise, the difference of principal arguments at
    adjacent samples is formed; raw jumps below -pi (the argument wrapped
    from pi^- to -pi^+) count +1 and jumps above +pi count -1.

    Raises
    ------
    BoundaryZeroError
        when |f| at a sample is below the floor (perturb the region).
    UnresolvedPhaseError
        when adjacent arguments differ by nearly pi (increase sampling).
    """
    if samples_per_edge < 2:
        raise ValueError("samples_per_edge must be at least 2")
    z = _boundary_samples(region, samples_per_edge)
    vals = np.asarray(f(z), dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise BoundaryZeroError("non-finite value at a boundary sample")
    mags = np.abs(vals)
    # Absolute floor plus a relative one: a sample many orders below the
    # typical boundary magnitude means the contour clips a zero, which also
    # defeats the phase-jump counter through aliasing.
    floor = max(SAMPLE_FLOOR, 1e-13 * float(np.median(mags)))
    if np.any(mags < floor):
        raise BoundaryZeroError("boundary sample too close to a zero")
    args = np.angle(vals)
    raw = np.diff(np.append(args, args[0]))
    wrapped = raw - 2.0 * np.pi * np.round(raw / (2.0 * np.pi))
    if np.any(np.abs(wrapped) > PHASE_GUARD):
        raise UnresolvedPhaseError("phase increment near pi between adjacent samples")
    pos = int(np.count_nonzero(raw < -np.pi))
    neg = int(np.count_nonzero(raw > np.pi))
    return pos - neg


def _winding_adaptive(f, region, samples=BASE_SAMPLES):
    """Winding count accepted only once two consecutive sampling densities
    agree; a zero close to the boundary can alias a full 2 pi wrap between
    adjacent samples without tripping the phase guard, and no single-level
    check can see that."""
    m = samples
    prev = None
    while True:
        try:
            count = winding_count(f, region, m)
        except UnresolvedPhaseError:
            if m >= MAX_SAMPLES:
                raise
            m *= 2
            prev = None
            continue
        if prev is not None and count == prev:
            return count
        if m >= MAX_SAMPLES:
            return count
        prev = count
        m *= 2


def newton_polish(f, f_deriv, z0, max_iter=NEWTON_MAX_ITER):
    """Newton iteration from z0; returns the root or None on divergence."""
    z = complex(z0)
    for _ in range(max_iter):
        fz = complex(f(z))
        dz = complex(f_deriv(z))
        if dz == 0 or not (np.isfinite(abs(fz)) and np.isfinite(abs(dz))):
            return None
        step = fz / dz
        z = z - step
        if abs(step) < NEWTON_STEP_TOL * (1.0 + abs(z)):
            return z
    return None


def _clip(vertices, axis, c, keep_low):
    """Sutherland-Hodgman clip of a polygon against an axis-parallel half-plane."""

    def coord(z):
        return z.real if axis == 0 else z.imag

    out = []
    n = len(vertices)
    for i in range(n):
        cur, nxt = vertices[i], vertices[(i + 1) % n]
        in_cur = (coord(cur) <= c) if keep_low else (coord(cur) >= c)
        in_nxt = (coord(nxt) <= c) if keep_low else (coord(nxt) >= c)
        if in_cur:
            out.append(cur)
        if in_cur != in_nxt:
            t = (c - coord(cur)) / (coord(nxt) - coord(cur))
            out.append(cur + t * (nxt - cur))
    return out


def _subdivide(f, f_deriv, region, count, residual_tol, out):
    if count == 0:
        return
    diam = region.diameter()
    if count == 1:
        z = newton_polish(f, f_deriv, region.centroid())
        if z is not None and region.contains(z) and abs(complex(f(z))) <= residual_tol:
            out.append((z, abs(complex(f(z))), False, 1))
            return
    if diam <= region.min_diameter:
        # Resolution floor: either Newton rescues a simple root, or the
        # root is flagged at the cell midpoint with its winding count.
        if count == 1:
            z = newton_polish(f, f_deriv, region.centroid())
            if z is not None and region.contains(z) and abs(complex(f(z))) <= residual_tol:
                out.append((z, abs(complex(f(z))), False, 1))
                return
        c = region.centroid()
        out.append((c, abs(complex(f(c))), True, count))
        return
    re_min, re_max, im_min, im_max = region.bounding_box()
    axis = 0 if (re_max - re_min) >= (im_max - im_min) else 1
    lo, hi = (re_min, re_max) if axis == 0 else (im_min, im_max)
    mid = 0.5 * (lo + hi)
    for shift in range(CUT_SHIFTS + 1):
        c = mid + shift * 0.01 * diam
        va = _clip(region.vertices, axis, c, keep_low=True)
        vb = _clip(region.vertices, axis, c, keep_low=False)
        if len(va) < 3 or len(vb) < 3:
            continue
        ra = Region(tuple(va), region.min_diameter)
        rb = Region(tuple(vb), region.min_diameter)
        try:
            ca = _winding_adaptive(f, ra)
            cb = _winding_adaptive(f, rb)
        except (BoundaryZeroError, UnresolvedPhaseError):
            continue  # cut landed on (or too near) a zero; shift it
        if ca + cb != count:
            continue  # cut aliased a zero; shift it
        _subdivide(f, f_deriv, ra, ca, residual_tol, out)
        _subdivide(f, f_deriv, rb, cb, residual_tol, out)
        return
    raise BoundaryZeroError("no clean bisection cut found; perturb the region")


def find_zeros(f, f_deriv, region, residual_tol=1e-12):
    """Locate every zero of f inside ``region``.

    Recursive bisection isolates zeros, Newton polishes the simple ones to
    |f(root)| <= residual_tol, and clusters that stay multiple at the
    resolution floor are flagged rather than resolved.  The report is
    deterministic: roots are sorted lexicographically by (Re, Im).
    """
    total = _winding_adaptive(f, region)
    found = []
    if total > 0:
        _subdivide(f, f_deriv, region, total, residual_tol, found)
    found.sort(key=lambda r: (r[0].real, r[0].imag))
    merged = []
    for root, resid, flag, wind in found:
        dup = None
        for entry in merged:
            if abs(root - entry[0]) <= region.min_diameter:
                dup = entry
                break
        if dup is not None:
            # a cluster below the resolution floor: one unresolved root whose
            # winding is the sum of its members (e.g. a multiple zero split
            # across a cut that aliased its phase)
            if resid < dup[1]:
                dup[0], dup[1] = root, resid
            dup[3] += wind
            dup[2] = dup[2] or flag or dup[3] > 1
            continue
        merged.append([root, resid, flag, wind])
    report = RootReport(
        roots=tuple(m[0] for m in merged),
        residuals=tuple(m[1] for m in merged),
        multiplicity_flags=tuple(m[2] for m in merged),
        windings=tuple(m[3] for m in merged),
    )
    if sum(report.windings) != total:
        raise RuntimeError(
            f"root accounting mismatch: isolated {sum(report.windings)} of {total}"
        )
    return report
