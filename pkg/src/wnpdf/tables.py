"""Piecewise plans indexed by sigma, built in or regenerated by crossover search."""

from __future__ import annotations

import bisect
import csv
import io
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .bounds import AccuracyTarget, plan_theoretical
from .errors import InvalidArgumentError, InvalidParameterError, NoTableError, TableConstructionError
from .series import EvalPlan, SeriesKind, worst_case_error

CSV_HEADER = ("sigma_upper", "kind", "n")
DEFAULT_GRID = 1024

F = SeriesKind.WRAPPED_SUM
G = SeriesKind.THETA_SUM


@dataclass(frozen=True)
class ThresholdTable:
    """Rows ``(sigma_upper, plan)``; a row covers ``prev_upper <= sigma < sigma_upper``."""

    accuracy: AccuracyTarget
    rows: tuple
    notes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        rows = tuple((float(u), p) for u, p in self.rows)
        if not rows:
            raise InvalidArgumentError("a threshold table needs at least one row")
        uppers = [u for u, _ in rows]
        if any(not b > a for a, b in zip(uppers, uppers[1:])):
            raise InvalidArgumentError(f"sigma_upper values must be strictly increasing: {uppers}")
        if uppers[0] <= 0.0 or not math.isinf(uppers[-1]):
            raise InvalidArgumentError("uppers must be positive and end with infinity")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "accuracy", AccuracyTarget.coerce(self.accuracy))

    @property
    def boundaries(self) -> list[float]:
        return [u for u, _ in self.rows[:-1]]

    @property
    def plans(self) -> list[EvalPlan]:
        return [p for _, p in self.rows]

    def row_index(self, sigma: float) -> int:
        if not sigma > 0.0:
            raise InvalidParameterError(f"sigma must be positive, got {sigma!r}")
        return bisect.bisect_right([u for u, _ in self.rows], sigma)

    def lookup(self, sigma: float) -> EvalPlan:
        return self.rows[self.row_index(sigma)][1]

    def row_range(self, i: int) -> tuple[float, float]:
        lo = 0.0 if i == 0 else self.rows[i - 1][0]
        return lo, self.rows[i][0]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for upper, plan in self.rows:
            w.writerow([format_float(upper), plan.kind.value if plan.kind is not SeriesKind.UNIFORM else "g",
                        plan.n])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, accuracy) -> "ThresholdTable":
        reader = csv.reader(io.StringIO(text))
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise InvalidArgumentError(f"unexpected header {header!r}")
        rows = [(float(u), EvalPlan(SeriesKind.parse(k), int(n))) for u, k, n in reader]
        return cls(accuracy, rows)


def format_float(v: float) -> str:
    """Shortest round-trip text for ``v``; ``inf`` for infinity."""
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(float(v))


def _table(accuracy, spec, notes=None) -> ThresholdTable:
    rows = [(u, EvalPlan(kind, order + 1 if kind is F else order)) for u, kind, order in spec]
    return ThresholdTable(accuracy, rows, notes or {})


INF = math.inf

# (sigma_upper, kind, order as printed); wrapped-sum rows print f^m and evaluate f_{m+1}
_BUILTIN = {
    1e-5: [(1.34, F, 0), (2.28, F, 1), (4.56, G, 1), (INF, G, 0)],
    1e-10: [(0.93, F, 0), (1.89, F, 1), (2.21, F, 2), (3.31, G, 2), (6.62, G, 1), (INF, G, 0)],
    1e-15: [(0.76, F, 0), (1.53, F, 1), (2.31, F, 2), (2.73, G, 3), (4.09, G, 2), (8.17, G, 1), (INF, G, 0)],
}
_NOTES = {
    1e-15: {6: "printed as g^1 in the source table, which repeats the previous row; "
               "encoded as g^0 following the pattern of the other accuracies"},
}


def builtin_table(accuracy) -> ThresholdTable:
    """Published plans for accuracies 1e-5, 1e-10 and 1e-15."""
    target = AccuracyTarget.coerce(accuracy)
    for key, spec in _BUILTIN.items():
        if math.isclose(target.threshold, key, rel_tol=1e-9):
            return _table(key, spec, _NOTES.get(key))
    raise NoTableError(f"no built-in table for accuracy {target.threshold!r}; "
                       "use plan_theoretical or crossover_search")


def plan_empirical(sigma: float, accuracy) -> EvalPlan:
    """Table plan when one exists for ``accuracy``, otherwise the bound-derived plan."""
    try:
        table = builtin_table(accuracy)
    except NoTableError:
        return plan_theoretical(sigma, accuracy)
    return table.lookup(sigma)


# ---------------------------------------------------------------------------
# crossover search


def _round_half_up(v: float, decimals: int) -> float:
    if math.isinf(v):
        return v
    q = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(v)).quantize(q, rounding=ROUND_HALF_UP))


def _f_limit(plan, ok, lo, hi, tol):
    """Largest verified-sufficient sigma for a plan whose error grows with sigma."""
    if not ok(plan, lo):
        return 0.0
    if ok(plan, hi):
        return INF
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(plan, mid):
            lo = mid
        else:
            hi = mid
    return lo


def _g_start(plan, ok, lo, hi, tol):
    """Smallest verified-sufficient sigma for a plan whose error shrinks with sigma."""
    if not ok(plan, hi):
        return INF
    if ok(plan, lo):
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(plan, mid):
            hi = mid
        else:
            lo = mid
    return hi


def crossover_search(accuracy, n_max: int = 5, sigma_max: float = 20.0, tol: float = 1e-3, *,
                     sigma_min: float = 0.1, grid_size: int = DEFAULT_GRID,
                     decimals: int | None = None) -> ThresholdTable:
    """Rebuild a piecewise plan table from measured worst-case errors.

    Candidates are the table orders ``0..n_max`` of both representations
    (wrapped-sum order ``m`` evaluates ``f_{m+1}``). Wrapped-sum errors grow
    with sigma and theta-sum errors shrink, so each candidate's sufficient
    range is a half-line found by bisection to width ``tol``. Every sigma
    is then assigned the sufficient candidate of lowest order, ties going
    to the theta sum. Below ``sigma_min`` the first row is extrapolated.

    Boundaries are the verified side of each bisection bracket; pass
    ``decimals`` to round them half-up for reporting.
    """
    target = AccuracyTarget.coerce(accuracy)
    if int(n_max) != n_max or n_max < 0:
        raise InvalidArgumentError(f"n_max must be a non-negative integer, got {n_max!r}")
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidArgumentError(f"tol must be positive, got {tol!r}")
    if not (0 < sigma_min < sigma_max and math.isfinite(sigma_max)):
        raise InvalidArgumentError("need 0 < sigma_min < sigma_max < inf")
    e = target.threshold

    def ok(plan: EvalPlan, sigma: float) -> bool:
        return worst_case_error(plan.kind, plan.n, sigma, grid_size).error <= e

    f_plans = [EvalPlan(F, m + 1) for m in range(int(n_max) + 1)]
    g_plans = [EvalPlan(G, m) for m in range(int(n_max) + 1)]
    f_limits = [_f_limit(p, ok, sigma_min, sigma_max, tol) for p in f_plans]
    g_starts = [_g_start(p, ok, sigma_min, sigma_max, tol) for p in g_plans]

    def assign(sigma: float) -> EvalPlan | None:
        best_f = next((m for m, b in enumerate(f_limits) if sigma <= b), None)
        best_g = next((m for m, a in enumerate(g_starts) if sigma >= a), None)
        if best_g is not None and (best_f is None or best_g <= best_f):
            return g_plans[best_g]
        if best_f is not None:
            return f_plans[best_f]
        return None

    cuts = sorted({v for v in f_limits + g_starts if sigma_min < v < sigma_max})
    edges = [sigma_min] + cuts + [sigma_max]
    rows: list[tuple[float, EvalPlan]] = []
    for a, b in zip(edges, edges[1:]):
        # sufficiency sets only change at cuts, so one interior probe decides the interval
        probe = 0.5 * (a + b)
        plan = assign(probe)
        if plan is None:
            raise TableConstructionError(
                f"no plan with order <= {n_max} reaches accuracy {e:g} at sigma={probe:.6g}")
        upper = b if b < sigma_max else INF
        if rows and rows[-1][1] == plan:
            rows[-1] = (upper, plan)
        else:
            rows.append((upper, plan))

    if decimals is not None:
        merged: list[tuple[float, EvalPlan]] = []
        for upper, plan in rows:
            upper = _round_half_up(upper, decimals)
            if merged and merged[-1][0] >= upper:
                continue
            if merged and merged[-1][1] == plan:
                merged[-1] = (upper, plan)
            else:
                merged.append((upper, plan))
        rows = merged
    notes = {"f_limits": f_limits, "g_starts": g_starts, "grid_size": grid_size, "tol": tol}
    return ThresholdTable(target, rows, notes)
