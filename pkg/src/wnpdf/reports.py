"""Row generators behind the CLI's CSV commands (sweeps, minimum-n curves, timing)."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .angles import make_wn
from .bounds import AccuracyTarget, required_n
from .errors import InvalidArgumentError
from .series import EvalPlan, SeriesKind, evaluate, pdf_reference, worst_case_error
from .tables import plan_empirical


@dataclass(frozen=True)
class SweepSpec:
    sigma_min: float
    sigma_max: float
    steps: int
    n_values: tuple
    grid_size: int = 1000
    log: bool = False

    def __post_init__(self):
        if not (0 < self.sigma_min < self.sigma_max and math.isfinite(self.sigma_max)):
            raise InvalidArgumentError("need 0 < sigma_min < sigma_max < inf")
        if int(self.steps) != self.steps or self.steps < 2:
            raise InvalidArgumentError(f"steps must be an integer >= 2, got {self.steps!r}")
        if any(int(n) != n or n < 0 for n in self.n_values) or not self.n_values:
            raise InvalidArgumentError(f"n_values must be non-negative integers, got {self.n_values!r}")
        if int(self.grid_size) != self.grid_size or self.grid_size < 2:
            raise InvalidArgumentError(f"grid_size must be an integer >= 2, got {self.grid_size!r}")
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))

    def sigmas(self) -> np.ndarray:
        return sigma_grid(self.sigma_min, self.sigma_max, self.steps, self.log)


def sigma_grid(lo: float, hi: float, steps: int, log: bool = False) -> np.ndarray:
    if log:
        return np.geomspace(lo, hi, int(steps))
    return np.linspace(lo, hi, int(steps))


def sweep_rows(spec: SweepSpec, kind):
    """Yield ``(sigma, n, error)`` worst-case errors; zero errors are kept."""
    kind = SeriesKind.parse(kind)
    for sigma in spec.sigmas():
        for n in spec.n_values:
            yield float(sigma), n, worst_case_error(kind, n, float(sigma), spec.grid_size).error


def min_n_rows(accuracy, sigma_min: float, sigma_max: float, steps: int, log: bool = False):
    """Yield ``(sigma, n_f, n_g, n_combined, kind)`` from the bound-derived orders."""
    target = AccuracyTarget.coerce(accuracy)
    if not (0 < sigma_min < sigma_max):
        raise InvalidArgumentError("need 0 < sigma_min < sigma_max")
    if int(steps) != steps or steps < 2:
        raise InvalidArgumentError(f"steps must be an integer >= 2, got {steps!r}")
    for sigma in sigma_grid(sigma_min, sigma_max, steps, log):
        req = required_n(float(sigma), target)
        kind = "f" if req.n_f < req.n_g else "g"
        yield float(sigma), req.n_f, req.n_g, math.ceil(min(req.n_f, req.n_g)), kind


def _time_ns(fn, repetitions: int, inner: int) -> float:
    samples = []
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        for _ in range(inner):
            fn()
        samples.append((time.perf_counter_ns() - t0) / inner)
    return statistics.median(samples)


def bench_rows(sigmas, accuracy, repetitions: int = 5, inner: int = 200, x: float = 1.0):
    """Yield ``(sigma, kind, n, ns_per_eval)`` for four evaluation routes per sigma.

    ``f`` and ``g`` use the bound-derived orders for their own series,
    ``plan-<label>`` is the plan chosen by :func:`plan_empirical`, and
    ``reference`` is the cross-checked machine-precision evaluation (its
    ``n`` is the number of terms it needed).
    """
    target = AccuracyTarget.coerce(accuracy)
    if int(repetitions) != repetitions or repetitions < 1:
        raise InvalidArgumentError(f"repetitions must be a positive integer, got {repetitions!r}")
    for sigma in sigmas:
        wn = make_wn(0.0, sigma)
        req = required_n(wn.sigma, target)
        routes = [
            ("f", EvalPlan(SeriesKind.WRAPPED_SUM, math.ceil(req.n_f))),
            ("g", EvalPlan(SeriesKind.THETA_SUM, math.ceil(req.n_g))),
        ]
        planned = plan_empirical(wn.sigma, target)
        routes.append((f"plan-{planned.label}", planned))
        for name, plan in routes:
            ns = _time_ns(lambda: evaluate(plan, x, wn), repetitions, inner)
            yield wn.sigma, name, plan.n, ns
        ref_terms = pdf_reference(x, wn).terms_used
        ns = _time_ns(lambda: pdf_reference(x, wn), repetitions, max(1, inner // 4))
        yield wn.sigma, "reference", ref_terms, ns
