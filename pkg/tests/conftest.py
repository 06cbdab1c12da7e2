import math

import mpmath
import pytest

mpmath.mp.dps = 50


def brute_f(d, sigma, n):
    """Wrapped-sum partial sum at 50 digits, term by term over |k| <= n."""
    d, s = mpmath.mpf(d), mpmath.mpf(sigma)
    two_pi = 2 * mpmath.pi
    total = mpmath.fsum(mpmath.exp(-((d + two_pi * k) ** 2) / (2 * s * s)) for k in range(-n, n + 1))
    return total / (mpmath.sqrt(two_pi) * s)


def brute_density(d, sigma):
    """Converged density via Jacobi theta3, independent of both series codes."""
    d, s = mpmath.mpf(d), mpmath.mpf(sigma)
    q = mpmath.exp(-s * s / 2)
    return mpmath.jtheta(3, d / 2, q) / (2 * mpmath.pi)


def brute_g(d, sigma, n):
    d, s = mpmath.mpf(d), mpmath.mpf(sigma)
    terms = [mpmath.exp(-(k * s) ** 2 / 2) * mpmath.cos(k * d) for k in range(1, n + 1)]
    return (1 + 2 * mpmath.fsum(terms)) / (2 * mpmath.pi)


@pytest.fixture(scope="session")
def oracle():
    class Oracle:
        f = staticmethod(brute_f)
        g = staticmethod(brute_g)
        density = staticmethod(brute_density)

    return Oracle


def close_ulps(a, b, ulps=4):
    return abs(a - b) <= ulps * math.ulp(max(abs(a), abs(b)))
