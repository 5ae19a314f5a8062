import warnings

import numpy as np
import pytest

from airybvp import evolution, piecewise, spectral


@pytest.fixture(scope="session")
def indicator():
    return piecewise.named_datum("indicator-third")


@pytest.fixture(scope="session")
def spectrum_half():
    """beta = 0.5 spectrum up to |n| = 20, shared across tests."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = spectral.enumerate_spectrum(0.5, 20)
    return {p.index: p for p in pairs}


@pytest.fixture(scope="session")
def series_half_indicator(indicator):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return evolution.build_series(0.5, indicator, n_max=40)


def quad_complex(f, a, b, **kw):
    """scipy quadrature of a complex integrand (independent oracle)."""
    from scipy.integrate import quad

    kw.setdefault("limit", 200)
    re = quad(lambda x: np.real(f(x)), a, b, **kw)[0]
    im = quad(lambda x: np.imag(f(x)), a, b, **kw)[0]
    return re + 1j * im
