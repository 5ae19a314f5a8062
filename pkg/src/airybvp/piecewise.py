"""Piecewise-polynomial initial data on (0,1) with closed-form transforms.

A datum is a partition 0 = y_0 < y_1 < ... < y_n = 1 together with one
polynomial of degree <= 3 per subinterval (coefficients low order first).
Point values at breakpoints are irrelevant: only one-sided limits enter
any integral.  Coefficients may be complex; the bundled named data are
real.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

SMALL_K = 1e-6      # below this |k| the oscillatory closed form cancels badly
_SERIES_TERMS = 10  # Taylor terms for the small-k branch

MAX_DEGREE = 3


@dataclass(frozen=True)
class PiecewiseDatum:
    breakpoints: tuple
    pieces: tuple

    def __post_init__(self):
        bps = tuple(float(b) for b in self.breakpoints)
        if len(bps) < 2 or abs(bps[0]) > 1e-15 or abs(bps[-1] - 1.0) > 1e-15:
            raise ValueError("breakpoints must run from 0 to 1")
        if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(bps) - 1:
            raise ValueError("piece count must be breakpoint count - 1")
        pcs = []
        for c in self.pieces:
            arr = tuple(complex(v) for v in c)
            if not 1 <= len(arr) <= MAX_DEGREE + 1:
                raise ValueError("each piece needs 1..4 coefficients (degree <= 3)")
            pcs.append(arr)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", tuple(pcs))

    def piece_index(self, x):
        i = int(np.searchsorted(self.breakpoints, x, side="right")) - 1
        return min(max(i, 0), len(self.pieces) - 1)

    def __call__(self, x, side="+"):
        """One-sided evaluation; ``side`` breaks ties at breakpoints."""
        x = float(x)
        i = self.piece_index(x)
        if side == "-" and x <= self.breakpoints[i] and i > 0:
            i -= 1
        return npoly.polyval(x, np.asarray(self.pieces[i]))

    def jumps(self):
        """Interior jump table [(y_j, u(y_j+) - u(y_j-))], small jumps dropped."""
        table = []
        for j in range(1, len(self.breakpoints) - 1):
            y = self.breakpoints[j]
            delta = self(y, "+") - self(y, "-")
            if abs(delta) > 1e-14:
                table.append((y, delta))
        return table

    def integral(self):
        total = 0.0 + 0.0j
        for a, b, c in zip(self.breakpoints, self.breakpoints[1:], self.pieces):
            anti = npoly.polyint(np.asarray(c))
            total += npoly.polyval(b, anti) - npoly.polyval(a, anti)
        return total

    def l2_norm(self):
        total = 0.0
        for a, b, c in zip(self.breakpoints, self.breakpoints[1:], self.pieces):
            sq = npoly.polymul(np.asarray(c), np.conj(np.asarray(c)))
            anti = npoly.polyint(sq)
            total += (npoly.polyval(b, anti) - npoly.polyval(a, anti)).real
        return float(np.sqrt(max(total, 0.0)))

    def weighted_l2_norm(self):
        """sqrt of the x-weighted energy integral of |u|^2 over (0,1)."""
        total = 0.0
        for a, b, c in zip(self.breakpoints, self.breakpoints[1:], self.pieces):
            sq = npoly.polymul(np.asarray(c), np.conj(np.asarray(c)))
            sq = npoly.polymul(sq, np.asarray([0.0, 1.0]))
            anti = npoly.polyint(sq)
            total += (npoly.polyval(b, anti) - npoly.polyval(a, anti)).real
        return float(np.sqrt(max(total, 0.0)))

    def to_json(self):
        return json.dumps(
            {
                "breakpoints": list(self.breakpoints),
                "pieces": [[v.real for v in p] for p in self.pieces],
            }
        )


def from_json(text):
    data = json.loads(text)
    return PiecewiseDatum(tuple(data["breakpoints"]), tuple(tuple(p) for p in data["pieces"]))


def load_datum(path):
    with open(path, "r", encoding="utf-8") as fh:
        return from_json(fh.read())


_NAMED = {
    "indicator-third": ((0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0), ((0.0,), (1.0,), (0.0,))),
    "one": ((0.0, 1.0), ((1.0,),)),
    "ramp": ((0.0, 1.0), ((0.0, 1.0),)),
}


def named_datum(name):
    """Built-in data: 'indicator-third', 'one', 'ramp'."""
    if name not in _NAMED:
        raise KeyError(f"unknown datum {name!r}; choose from {sorted(_NAMED)}")
    bps, pieces = _NAMED[name]
    return PiecewiseDatum(bps, pieces)


def _piece_q(coeffs, w):
    """Antiderivative weight: integral p(z) e^{wz} dz = e^{wz} q(z) with
    q = p/w - p'/w^2 + p''/w^3 - p'''/w^4 (degree <= 3)."""
    c = np.asarray(coeffs)
    q = npoly.polymul(c, [1.0]) / w
    sign = -1.0
    power = w * w
    d = npoly.polyder(c)
    while d.size and np.any(d != 0):
        q = npoly.polyadd(q, sign * d / power)
        d = npoly.polyder(d)
        sign = -sign
        power = power * w
    return q


def exp_transform_terms(u0, k):
    """Represent the transform integral(e^{-ikz} u0(z) dz, 0..1) as a sum
    sum_b c_b * e^{-ik y_b} over breakpoints, with c_b free of exponentials.

    Callers that combine the transform with other exponentials use this
    form to merge exponents before exponentiating.  For |k| < SMALL_K a
    single term (y=0, value) from the Taylor branch is returned.
    """
    k = complex(k)
    if abs(k) < SMALL_K:
        return [(0.0, _small_k_value(u0, k))]
    w = -1j * k
    qs = [_piece_q(c, w) for c in u0.pieces]
    terms = []
    nb = len(u0.breakpoints)
    for b, y in enumerate(u0.breakpoints):
        left = npoly.polyval(y, qs[b - 1]) if b > 0 else 0.0
        right = npoly.polyval(y, qs[b]) if b < nb - 1 else 0.0
        coef = left - right
        if coef != 0:
            terms.append((y, coef))
    return terms


def _small_k_value(u0, k):
    total = 0.0 + 0.0j
    for a, b, c in zip(u0.breakpoints, u0.breakpoints[1:], u0.pieces):
        for m, cm in enumerate(c):
            if cm == 0:
                continue
            for t in range(_SERIES_TERMS):
                mom = (b ** (m + t + 1) - a ** (m + t + 1)) / (m + t + 1)
                total += cm * (-1j * k) ** t / math.factorial(t) * mom
    return total


def exp_transform(u0, k):
    """Transform integral(e^{-ikz} u0(z) dz, 0..1), exactly per piece.

    Accepts scalar or ndarray k; linear in u0.  At k = 0 this is the plain
    integral of the datum.
    """
    karr = np.asarray(k, dtype=complex)
    scalar = karr.ndim == 0
    karr = np.atleast_1d(karr)
    out = np.zeros(karr.shape, dtype=complex)
    small = np.abs(karr) < SMALL_K
    if np.any(small):
        out[small] = [_small_k_value(u0, kv) for kv in karr[small]]
    big = ~small
    if np.any(big):
        kb = karr[big]
        w = -1j * kb
        acc = np.zeros(kb.shape, dtype=complex)
        nb = len(u0.breakpoints)
        qvals = []
        for c in u0.pieces:
            # q coefficients depend on w elementwise; evaluate degree terms directly
            qvals.append(_piece_q_vals(c, w))
        for b, y in enumerate(u0.breakpoints):
            left = qvals[b - 1](y) if b > 0 else 0.0
            right = qvals[b](y) if b < nb - 1 else 0.0
            acc += (left - right) * np.exp(-1j * kb * y)
        out[big] = acc
    return out[0] if scalar else out.reshape(np.shape(k))


def _piece_q_vals(coeffs, w):
    """Vectorized variant of _piece_q: returns y -> q(y) for array w."""
    c = np.asarray(coeffs)
    ders = [c]
    while ders[-1].size > 1:
        ders.append(npoly.polyder(ders[-1]))

    def q(y):
        total = np.zeros(w.shape, dtype=complex)
        power = w.copy()
        sign = 1.0
        for d in ders:
            total += sign * npoly.polyval(y, d) / power
            power = power * w
            sign = -sign
        return total

    return q
