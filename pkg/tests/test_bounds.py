import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnpdf import (
    AccuracyTarget,
    BoundNotApplicableError,
    EvalPlan,
    InvalidArgumentError,
    SeriesKind,
    bound_f,
    bound_g,
    builtin_table,
    check_bound_dominates,
    plan_theoretical,
    required_n,
)
from wnpdf.bounds import f_precondition, g_precondition


def test_bound_examples():
    # frozen from 50-digit evaluations of the closed forms
    assert bound_f(2, 1.0) == pytest.approx(2.4022363558652049603e-10, rel=1e-14)
    assert bound_g(1, 2.0) == pytest.approx(0.015230570456208211188, rel=1e-14)


def test_bound_preconditions():
    with pytest.raises(BoundNotApplicableError):
        bound_f(1, 1.0)  # needs n > 1.225
    with pytest.raises(BoundNotApplicableError):
        bound_g(1, 1.0)  # needs n > 1.414
    with pytest.raises(BoundNotApplicableError):
        bound_g(14, 0.1)
    assert bound_g(15, 0.1) > 0


def test_precondition_boundary_is_strict():
    assert not g_precondition(2, math.sqrt(2) / 2 * 0.999)
    assert g_precondition(2, math.sqrt(2) / 2 * 1.001)
    assert f_precondition(2, 0.1)
    assert not f_precondition(1, 0.1)


@pytest.mark.parametrize("sigma", [0.3, 1.0, 2.5, 7.0])
def test_bounds_decrease_in_n(sigma):
    fs = [bound_f(n, sigma) for n in range(1, 14) if f_precondition(n, sigma)]
    gs = [bound_g(n, sigma) for n in range(1, 14) if g_precondition(n, sigma)]
    assert all(b < a for a, b in zip(fs, fs[1:]) if b > 0)
    assert all(b < a for a, b in zip(gs, gs[1:]) if b > 0)


def test_required_n_example():
    req = required_n(2.31, 1e-15)
    assert req.n_f == pytest.approx(6.894, abs=1e-3)
    assert req.n_g == pytest.approx(3.475, abs=1e-3)


def test_required_n_clamps_at_precondition_floor():
    # a loose target makes the log argument exceed one
    req = required_n(0.5, 0.9)
    assert req.n_f == pytest.approx(1 + 0.5 / (math.sqrt(2) * math.pi))
    assert req.n_g == pytest.approx(math.sqrt(2) / 0.5)


@pytest.mark.parametrize("bad", [0.0, 1.0, -1e-3, math.nan, 2.0])
def test_accuracy_target_validation(bad):
    with pytest.raises(InvalidArgumentError):
        AccuracyTarget(bad)
    with pytest.raises(InvalidArgumentError):
        required_n(1.0, bad)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.05, max_value=20.0), st.sampled_from([1e-5, 1e-8, 1e-10, 1e-13, 1e-15]))
def test_required_n_meets_target(sigma, eps):
    req = required_n(sigma, eps)
    nf, ng = math.ceil(req.n_f), math.ceil(req.n_g)
    # the ceiling might land exactly on a precondition boundary
    if f_precondition(nf, sigma):
        assert bound_f(nf, sigma) <= eps * (1 + 1e-9)
    if g_precondition(ng, sigma):
        assert bound_g(ng, sigma) <= eps * (1 + 1e-9)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.05, max_value=20.0), st.sampled_from([1e-5, 1e-10, 1e-15]))
def test_required_n_inverts_bound(sigma, eps):
    req = required_n(sigma, eps)
    # n_f solves a stricter inequality than the bound, so it overshoots;
    # n_g inverts its bound exactly away from the clamp
    nf = req.n_f
    val = math.exp(-(math.pi * math.sqrt(2) * (nf - 1) / sigma) ** 2) / (2 * math.pi**1.5)
    assert val <= eps * (1 + 1e-9)
    ng = req.n_g
    if ng > math.sqrt(2) / sigma + 1e-9:
        val = math.exp(-0.5 * (ng * sigma) ** 2) / (math.sqrt(2) * math.pi * sigma)
        assert val == pytest.approx(eps, rel=1e-8)


def test_plan_theoretical_examples():
    small = plan_theoretical(0.1, 1e-10)
    assert small.kind is SeriesKind.WRAPPED_SUM and small.n == 2
    big = plan_theoretical(10.0, 1e-10)
    assert big.kind is SeriesKind.THETA_SUM and big.n == 1
    assert plan_theoretical(8.0, 1e-5) == EvalPlan("g", 1)
    p = plan_theoretical(0.3, 1e-5)
    assert p.kind is SeriesKind.WRAPPED_SUM and p.n <= 3
    p = plan_theoretical(0.5, 1e-5)
    assert p.kind is SeriesKind.WRAPPED_SUM
    mid = plan_theoretical(2.31, 1e-15)
    assert mid == EvalPlan("g", 4)


def test_plan_theoretical_is_conservative_against_table():
    # the bounds never ask for fewer terms than the measured crossovers
    for eps in (1e-5, 1e-10, 1e-15):
        table = builtin_table(eps)
        for i, (_, plan) in enumerate(table.rows):
            lo, hi = table.row_range(i)
            hi = min(hi, 20.0)
            for s in np.linspace(max(lo, 0.05), hi, 7)[1:-1]:
                assert plan_theoretical(s, eps).n >= plan.table_order


@pytest.mark.parametrize("sigma", [0.5, 1.0, 3.0])
def test_check_bound_dominates(sigma):
    for kind, bound in (("f", bound_f), ("g", bound_g)):
        for n in range(1, 8):
            try:
                r = check_bound_dominates(kind, n, sigma, 1024)
            except BoundNotApplicableError:
                continue
            assert r.bound == bound(n, sigma)
            assert r.ok and r.measured <= r.bound


def test_check_bound_rejects_uniform():
    with pytest.raises(BoundNotApplicableError):
        check_bound_dominates("uniform", 0, 1.0)
