"""Certified truncation-error bounds and the truncation order they imply.

For ``x, mu`` in ``[0, 2*pi)``:

* wrapped sum, valid when ``n > 1 + sigma/(sqrt(2)*pi)``::

      |f - f_n| < exp(-(pi*sqrt(2)*(n-1))**2 / sigma**2) / (2*pi**1.5)

* theta sum, valid when ``n > sqrt(2)/sigma``::

      |g - g_n| < exp(-n**2 * sigma**2 / 2) / (sqrt(2)*pi*sigma)

Outside those preconditions the inequalities are unproven, and asking for
them raises :class:`BoundNotApplicableError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BoundNotApplicableError, InvalidArgumentError, InvalidParameterError
from .series import EvalPlan, SeriesKind, _check_order, worst_case_error

_SQRT2 = math.sqrt(2.0)
_PI = math.pi


@dataclass(frozen=True)
class AccuracyTarget:
    """Absolute error threshold, strictly between 0 and 1."""

    threshold: float

    def __post_init__(self):
        t = float(self.threshold)
        if not (math.isfinite(t) and 0.0 < t < 1.0):
            raise InvalidArgumentError(f"accuracy must lie in (0, 1), got {self.threshold!r}")
        object.__setattr__(self, "threshold", t)

    @classmethod
    def coerce(cls, value) -> "AccuracyTarget":
        return value if isinstance(value, cls) else cls(value)


@dataclass(frozen=True)
class TruncationRequirement:
    """Unrounded orders ``n_f`` and ``n_g`` that meet a target."""

    n_f: float
    n_g: float


@dataclass(frozen=True)
class BoundCheck:
    bound: float
    measured: float
    ok: bool


def _sigma(sigma) -> float:
    s = float(sigma)
    if not (math.isfinite(s) and s > 0.0):
        raise InvalidParameterError(f"sigma must be positive and finite, got {sigma!r}")
    return s


def f_precondition(n: int, sigma: float) -> bool:
    return n > 1.0 + sigma / (_SQRT2 * _PI)


def g_precondition(n: int, sigma: float) -> bool:
    return n > _SQRT2 / sigma


def bound_f(n: int, sigma: float) -> float:
    n, sigma = _check_order(n), _sigma(sigma)
    if not f_precondition(n, sigma):
        raise BoundNotApplicableError(
            f"wrapped-sum bound needs n > 1 + sigma/(sqrt(2) pi) = {1 + sigma / (_SQRT2 * _PI):.6g}, got n={n}")
    a = _PI * _SQRT2 * (n - 1) / sigma
    return math.exp(-a * a) / (2.0 * _PI**1.5)


def bound_g(n: int, sigma: float) -> float:
    n, sigma = _check_order(n), _sigma(sigma)
    if not g_precondition(n, sigma):
        raise BoundNotApplicableError(
            f"theta-sum bound needs n > sqrt(2)/sigma = {_SQRT2 / sigma:.6g}, got n={n}")
    return math.exp(-0.5 * (n * sigma) ** 2) / (_SQRT2 * _PI * sigma)


def required_n(sigma: float, target) -> TruncationRequirement:
    """Smallest real orders for which each bound guarantees ``target``.

    When the argument of the logarithm exceeds 1 the target is already met
    at the precondition floor, so the square root is clamped at zero.
    """
    sigma = _sigma(sigma)
    e = AccuracyTarget.coerce(target).threshold
    root_f = math.sqrt(max(0.0, -math.log(4.0 * _PI**3 * e * e)))
    root_g = math.sqrt(max(0.0, -math.log(2.0 * _PI**2 * sigma * sigma * e * e)))
    n_f = max(1.0 + sigma / _PI * root_f, 1.0 + sigma / (_SQRT2 * _PI))
    n_g = max(root_g / sigma, _SQRT2 / sigma)
    return TruncationRequirement(n_f=n_f, n_g=n_g)


def plan_theoretical(sigma: float, target) -> EvalPlan:
    """Pick the representation needing fewer terms according to the bounds.

    ``n = ceil(min(n_f, n_g))``; an exact tie goes to the theta sum.
    """
    req = required_n(sigma, target)
    if req.n_f < req.n_g:
        return EvalPlan(SeriesKind.WRAPPED_SUM, math.ceil(req.n_f))
    return EvalPlan(SeriesKind.THETA_SUM, math.ceil(req.n_g))


def check_bound_dominates(kind, n: int, sigma: float, grid_size: int = 4096) -> BoundCheck:
    """Compare the measured worst-case error of ``kind``/``n`` with its bound."""
    kind = SeriesKind.parse(kind)
    if kind is SeriesKind.WRAPPED_SUM:
        bound = bound_f(n, sigma)
    elif kind is SeriesKind.THETA_SUM:
        bound = bound_g(n, sigma)
    else:
        raise BoundNotApplicableError("no bound is stated for the uniform plan")
    measured = worst_case_error(kind, n, sigma, grid_size).error
    return BoundCheck(bound=bound, measured=measured, ok=measured <= bound)
