"""Angles on the circle and the wrapped normal parameter record."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, InvalidParameterError

TWO_PI = 2.0 * math.pi

# Angles are plain floats normalized into [0, 2*pi).
Angle = float


def wrap(x):
    """Map ``x`` (radians, scalar or array) onto ``[0, 2*pi)``.

    ``fmod`` is exact, so values already inside the interval come back
    unchanged and ``wrap`` is idempotent bit-for-bit.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"angle must be finite, got {x!r}")
    r = np.fmod(arr, TWO_PI)
    r = np.where(r < 0.0, r + TWO_PI, r)
    # a tiny negative remainder plus 2*pi can round up to 2*pi itself
    r = np.where(r >= TWO_PI, 0.0, r) + 0.0  # also folds -0.0 into 0.0
    if r.ndim == 0:
        return float(r)
    return r


@dataclass(frozen=True)
class WrappedNormal:
    """Location ``mu`` in [0, 2*pi), scale ``sigma`` > 0, and cached ``rho``."""

    mu: float
    sigma: float
    rho: float = field(init=False, repr=True)

    def __post_init__(self):
        mu, sigma = float(self.mu), float(self.sigma)
        if not (math.isfinite(mu) and math.isfinite(sigma)):
            raise InvalidParameterError(f"mu and sigma must be finite (mu={mu!r}, sigma={sigma!r})")
        if not sigma > 0.0:
            raise InvalidParameterError(f"sigma must be positive, got {sigma!r}")
        object.__setattr__(self, "mu", wrap(mu))
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "rho", math.exp(-0.5 * sigma * sigma))


def make_wn(mu: float, sigma: float) -> WrappedNormal:
    """Build a :class:`WrappedNormal`, wrapping ``mu`` and validating ``sigma``."""
    try:
        mu, sigma = float(mu), float(sigma)
    except (TypeError, ValueError) as exc:
        raise InvalidParameterError(str(exc)) from exc
    return WrappedNormal(mu, sigma)
