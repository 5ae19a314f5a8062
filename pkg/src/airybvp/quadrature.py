"""Composite Gauss-Legendre rules on [0,1]."""
from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def composite_gauss_legendre(n_panels=64, n_nodes=32):
    """Nodes and weights of an n_nodes-point Gauss-Legendre rule applied on
    each of n_panels equal subintervals of [0,1]."""
    base_x, base_w = np.polynomial.legendre.leggauss(n_nodes)
    h = 1.0 / n_panels
    edges = np.arange(n_panels) * h
    x = (edges[:, None] + 0.5 * h * (base_x[None, :] + 1.0)).ravel()
    w = np.broadcast_to(0.5 * h * base_w, (n_panels, n_nodes)).ravel().copy()
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w
