"""Truncated series evaluators for the wrapped normal density.

Two representations are implemented:

* the wrapped sum ``f_n``: Gaussian terms at shifts ``d + 2*pi*k`` for
  ``|k| <= n`` (``2n + 1`` summands), normalized by ``sqrt(2*pi)*sigma``;
* the theta sum ``g_n``: ``(1 + 2*sum_{k=1..n} rho**(k*k) cos(k d)) / (2*pi)``.

Throughout, ``d = wrap(wrap(x) - mu)`` lies in ``[0, 2*pi)``. All kernels are
vectorized over ``d``; the scalar entry points are thin wrappers, so a scalar
call and the corresponding element of a grid evaluation agree bit-for-bit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .angles import TWO_PI, WrappedNormal, make_wn, wrap
from .errors import ConsistencyError, InvalidArgumentError, NonConvergenceError

SQRT_2PI = math.sqrt(TWO_PI)
MAX_TERMS = 10**6
AGREEMENT_RTOL = 1e-12
# near-ties in the worst-case scan closer than this many ulps of the peak density are noise
TIE_ULPS = 16.0
_EPS = np.finfo(float).eps
_SPLITTER = 2.0**27 + 1.0


class SeriesKind(enum.Enum):
    WRAPPED_SUM = "f"
    THETA_SUM = "g"
    UNIFORM = "uniform"

    @classmethod
    def parse(cls, value) -> "SeriesKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"f": cls.WRAPPED_SUM, "wrapped": cls.WRAPPED_SUM, "wrappedsum": cls.WRAPPED_SUM,
                   "g": cls.THETA_SUM, "theta": cls.THETA_SUM, "thetasum": cls.THETA_SUM,
                   "uniform": cls.UNIFORM, "u": cls.UNIFORM}
        try:
            return aliases[key.replace("_", "")]
        except KeyError:
            raise InvalidArgumentError(f"unknown series kind {value!r}") from None


def _check_order(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise InvalidArgumentError(f"truncation order must be a non-negative integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class EvalPlan:
    """Which representation to use and where to truncate it.

    ``n`` is the truncation order of the evaluator itself: ``2n + 1`` Gaussian
    summands for the wrapped sum, ``n`` cosine summands for the theta sum.
    """

    kind: SeriesKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", SeriesKind.parse(self.kind))
        object.__setattr__(self, "n", _check_order(self.n))
        if self.kind is SeriesKind.UNIFORM and self.n != 0:
            raise InvalidArgumentError("a uniform plan has order 0")

    @property
    def table_order(self) -> int:
        """Order as listed in combined-approximation tables (``f^m``, ``g^m``).

        Table rows for the wrapped sum are labelled one below the evaluator
        order: the row ``f^m`` is realized by ``f_{m+1}``, the lowest
        wrapped-sum truncation whose worst-case error (x -> 2*pi) stays
        inside the row. ``f_0`` therefore has table order -1; it is never
        sufficient in the worst case because it drops the k = -1 summand.
        """
        if self.kind is SeriesKind.WRAPPED_SUM:
            return self.n - 1
        return self.n

    @property
    def label(self) -> str:
        """Short form used by the CLI: ``f``, ``g`` or ``uniform``."""
        if self.kind is SeriesKind.WRAPPED_SUM:
            return "f"
        if self.n == 0:
            return "uniform"
        return "g"

    def __str__(self) -> str:
        return f"kind={self.label} n={self.n}"


@dataclass(frozen=True)
class ReferenceValue:
    """Machine-precision density together with both converged series.

    ``density`` is taken from the representation that settled in fewer
    terms (``kind_used``, ties to the theta sum); ``f_density`` and
    ``g_density`` are the two converged sums that were cross-checked.
    """

    density: float
    terms_used: int
    kind_used: SeriesKind
    f_density: float
    g_density: float


@dataclass(frozen=True)
class ErrorSample:
    """Largest measured truncation error of one plan over a grid, with ``mu = 0``."""

    kind: SeriesKind
    n: int
    sigma: float
    x_at_max: float
    error: float


# ---------------------------------------------------------------------------
# vectorized kernels


class _Accumulator:
    """Elementwise Neumaier summation with per-element freezing."""

    def __init__(self, first: np.ndarray):
        self.s = np.array(first, dtype=float)
        self.c = np.zeros_like(self.s)

    def add(self, v: np.ndarray, mask: np.ndarray | None = None) -> None:
        s = self.s
        t = s + v
        corr = np.where(np.abs(s) >= np.abs(v), (s - t) + v, (v - t) + s)
        if mask is None:
            self.s = t
            self.c = self.c + corr
        else:
            self.s = np.where(mask, t, s)
            self.c = np.where(mask, self.c + corr, self.c)

    @property
    def value(self) -> np.ndarray:
        return self.s + self.c


def _gauss(u: np.ndarray, sigma: float) -> np.ndarray:
    q = u / sigma
    return np.exp(-0.5 * q * q)


def _run(step, acc: _Accumulator, n: int | None, shape) -> np.ndarray:
    """Drive ``step(k, mask)`` for k = 1..n, or adaptively until settled.

    Adaptive mode freezes an element once two consecutive steps leave its
    rounded compensated sum unchanged, and returns per-element term counts.
    """
    if n is not None:
        for k in range(1, n + 1):
            step(k, None)
        return np.full(shape, n, dtype=np.int64)

    active = np.ones(shape, dtype=bool)
    still = np.zeros(shape, dtype=np.int64)
    used = np.zeros(shape, dtype=np.int64)
    for k in range(1, MAX_TERMS + 1):
        before = acc.value
        step(k, active)
        changed = acc.value != before
        still = np.where(active, np.where(changed, 0, still + 1), still)
        used = np.where(active, k, used)
        active = active & (still < 2)
        if not active.any():
            return used
    raise NonConvergenceError(f"series did not settle within {MAX_TERMS} terms")


def _wrapped_sum(d: np.ndarray, sigma: float, n: int | None = None):
    """Return ``(f_n(d), terms)``; ``n=None`` runs to convergence."""
    acc = _Accumulator(_gauss(d, sigma))

    def step(k, mask):
        shift = k * TWO_PI
        # the -k shift is the larger one because d >= 0
        acc.add(_gauss(d - shift, sigma), mask)
        acc.add(_gauss(d + shift, sigma), mask)

    used = _run(step, acc, n, d.shape)
    return acc.value / (SQRT_2PI * sigma), used


def _theta_sum(d: np.ndarray, sigma: float, n: int | None = None):
    """Return ``(g_n(d), terms)``; ``n=None`` runs to convergence."""
    # k*hi is exact for k < 2**27, so cos(k*d) keeps full accuracy for large k
    t = _SPLITTER * d
    hi = t - (t - d)
    lo = d - hi
    acc = _Accumulator(np.ones_like(d))

    def step(k, mask):
        a = k * hi
        b = k * lo
        cos_kd = np.cos(a) * np.cos(b) - np.sin(a) * np.sin(b)
        ks = k * sigma
        acc.add(2.0 * math.exp(-0.5 * ks * ks) * cos_kd, mask)

    used = _run(step, acc, n, d.shape)
    return acc.value / TWO_PI, used


def _reference(d: np.ndarray, sigma: float):
    f, f_used = _wrapped_sum(d, sigma)
    g, g_used = _theta_sum(d, sigma)
    gap = np.abs(f - g)
    bad = gap > AGREEMENT_RTOL * np.maximum(1.0, np.abs(f))
    if bad.any():
        i = int(np.argmax(bad))
        raise ConsistencyError(
            f"converged series disagree at d={d.flat[i]!r}, sigma={sigma!r}: "
            f"f={f.flat[i]!r}, g={g.flat[i]!r}")
    use_g = g_used <= f_used
    density = np.where(use_g, g, f)
    used = np.where(use_g, g_used, f_used)
    return density, used, use_g, f, g


# ---------------------------------------------------------------------------
# public evaluators


def _offsets(x, wn: WrappedNormal):
    d = np.asarray(wrap(wrap(x) - wn.mu), dtype=float)
    return d, d.ndim == 0


def _out(values: np.ndarray, scalar: bool):
    return float(values) if scalar else values


def pdf_f(x, wn: WrappedNormal, n: int):
    """Wrapped-sum density truncated to ``2n + 1`` Gaussian summands.

    Summation runs centre outward in symmetric pairs with compensated
    accumulation, so the result is non-decreasing in ``n``.
    """
    n = _check_order(n)
    d, scalar = _offsets(x, wn)
    values, _ = _wrapped_sum(np.atleast_1d(d), wn.sigma, n)
    return _out(values.reshape(d.shape), scalar)


def pdf_g(x, wn: WrappedNormal, n: int):
    """Theta-sum density truncated after ``n`` cosine terms.

    Coefficients are ``exp(-k**2 sigma**2 / 2)`` in one exponential each.
    For small ``n`` and small ``sigma`` the partial sum can dip slightly
    below zero; that is reported as-is.
    """
    n = _check_order(n)
    d, scalar = _offsets(x, wn)
    values, _ = _theta_sum(np.atleast_1d(d), wn.sigma, n)
    return _out(values.reshape(d.shape), scalar)


def pdf_uniform() -> float:
    return 1.0 / TWO_PI


def pdf_reference(x, wn: WrappedNormal):
    """Density to working precision, cross-checked between both representations.

    Both series are summed until two consecutive terms (pairs, for the
    wrapped sum) leave the compensated sum unchanged. Returns a
    :class:`ReferenceValue` for scalar ``x`` and a dict of arrays otherwise.

    Raises :class:`ConsistencyError` if the converged sums differ by more
    than ``1e-12 * max(1, f)`` and :class:`NonConvergenceError` past
    ``MAX_TERMS`` terms (the theta sum needs roughly ``40 / sigma`` terms).
    """
    d, scalar = _offsets(x, wn)
    density, used, use_g, f, g = _reference(np.atleast_1d(d), wn.sigma)
    if scalar:
        return ReferenceValue(
            density=float(density[0]),
            terms_used=int(used[0]),
            kind_used=SeriesKind.THETA_SUM if use_g[0] else SeriesKind.WRAPPED_SUM,
            f_density=float(f[0]),
            g_density=float(g[0]),
        )
    shape = d.shape
    return {
        "density": density.reshape(shape),
        "terms_used": used.reshape(shape),
        "theta_used": use_g.reshape(shape),
        "f_density": f.reshape(shape),
        "g_density": g.reshape(shape),
    }


def evaluate(plan: EvalPlan, x, wn: WrappedNormal):
    """Evaluate the density with the series and order named by ``plan``."""
    if plan.kind is SeriesKind.WRAPPED_SUM:
        return pdf_f(x, wn, plan.n)
    if plan.kind is SeriesKind.THETA_SUM:
        return pdf_g(x, wn, plan.n)
    if np.ndim(x) == 0:
        if not math.isfinite(x):
            raise InvalidArgumentError(f"angle must be finite, got {x!r}")
        return pdf_uniform()
    wrap(x)
    return np.full(np.shape(x), pdf_uniform())


# ---------------------------------------------------------------------------
# worst-case scan


def error_grid(grid_size: int) -> np.ndarray:
    """``grid_size`` cell midpoints of ``[0, 2*pi)``; the last stays below 2*pi."""
    return (np.arange(grid_size) + 0.5) * (TWO_PI / grid_size)


@lru_cache(maxsize=512)
def _reference_on_grid(sigma: float, grid_size: int):
    x = error_grid(grid_size)
    _, _, _, f, g = _reference(x, sigma)
    for arr in (x, f, g):
        arr.setflags(write=False)
    return x, f, g


def _plan_values(kind: SeriesKind, n: int, x: np.ndarray, sigma: float) -> np.ndarray:
    if kind is SeriesKind.WRAPPED_SUM:
        return _wrapped_sum(x, sigma, n)[0]
    return _theta_sum(x, sigma, n)[0]


def error_profile(kind, n: int, sigma: float, grid_size: int = 1000):
    """Absolute truncation error of ``kind``/``n`` on the scan grid (``mu = 0``).

    Each plan is compared with the converged sum of its own representation,
    so a fully converged truncation measures exactly zero. Returns
    ``(x, error, reference)``.
    """
    kind = SeriesKind.parse(kind)
    n = _check_order(n)
    if kind is SeriesKind.UNIFORM and n != 0:
        raise InvalidArgumentError("a uniform plan has order 0")
    if int(grid_size) != grid_size or grid_size < 2:
        raise InvalidArgumentError(f"grid_size must be an integer >= 2, got {grid_size!r}")
    sigma = make_wn(0.0, sigma).sigma
    x, f_ref, g_ref = _reference_on_grid(sigma, int(grid_size))
    ref = f_ref if kind is SeriesKind.WRAPPED_SUM else g_ref
    if kind is SeriesKind.UNIFORM:
        approx = np.full_like(x, pdf_uniform())
    else:
        approx = _plan_values(kind, n, x, sigma)
    return x, np.abs(approx - ref), ref


def worst_case_error(kind, n: int, sigma: float, grid_size: int = 1000) -> ErrorSample:
    """Maximum truncation error over the grid and where it occurs.

    Errors within ``TIE_ULPS`` ulps of the peak density of the maximum are
    indistinguishable in double precision; among those the point nearest
    ``2*pi`` is reported. For the theta sum the error is symmetric about
    ``pi``, so both ends of the grid tie exactly in exact arithmetic.
    """
    kind = SeriesKind.parse(kind)
    x, err, ref = error_profile(kind, n, sigma, grid_size)
    peak = float(err.max())
    tol = TIE_ULPS * _EPS * float(np.max(np.abs(ref)))
    idx = int(np.flatnonzero(err >= peak - tol)[-1])
    return ErrorSample(kind=kind, n=int(n), sigma=float(sigma), x_at_max=float(x[idx]), error=peak)
