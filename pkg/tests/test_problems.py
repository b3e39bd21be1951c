"""Built-in benchmark problem definitions."""

import numpy as np
import pytest

from mpdec import (
    POSITIVITY_FLOOR,
    check_conservative_structure,
    evaluate_rates,
    get_problem,
    linear_problem,
    nonlinear_problem,
    problem_names,
    robertson_problem,
    total_exchange,
)


def test_registry_names_and_lookup():
    assert problem_names() == ("linear", "algal", "robertson")
    assert get_problem("linear").name == "linear"
    with pytest.raises(ValueError, match="unknown problem"):
        get_problem("lorenz")


def test_linear_problem_definition():
    problem = linear_problem()
    assert problem.system.dimension == 2
    assert np.array_equal(problem.c0, [0.9, 0.1])
    assert problem.t_span == (0.0, 1.75)
    assert problem.default_dt == 0.25
    assert len(problem.default_schedule().dts) == 7


def test_linear_analytic_matches_initial_condition():
    exact = linear_problem().analytic_solution
    assert exact(0.0) == pytest.approx([0.9, 0.1], abs=1e-15)


def test_linear_analytic_conserves_and_relaxes():
    exact = linear_problem().analytic_solution
    for t in (0.0, 0.3, 1.0, 5.0):
        assert exact(t).sum() == pytest.approx(1.0, abs=1e-15)
    assert exact(100.0) == pytest.approx([1 / 6, 5 / 6], abs=1e-12)


def test_linear_analytic_satisfies_its_ode():
    # Central finite difference of the closed form versus the rate tables.
    problem = linear_problem()
    h = 1e-6
    for t in (0.05, 0.4, 1.2):
        derivative = (problem.analytic_solution(t + h)
                      - problem.analytic_solution(t - h)) / (2 * h)
        assert derivative == pytest.approx(
            total_exchange(problem.system, problem.analytic_solution(t)),
            abs=1e-6)


def test_algal_problem_definition():
    problem = nonlinear_problem()
    assert problem.system.dimension == 3
    assert problem.c0.sum() == pytest.approx(10.0, abs=1e-15)
    assert problem.t_span == (0.0, 30.0)
    assert problem.default_dt == 0.5
    assert problem.analytic_solution is None
    assert "SSP-RK(10,4)" in problem.reference_note


def test_algal_rate_table_entries():
    system = nonlinear_problem().system
    rng = np.random.default_rng(31)
    for _ in range(20):
        c = rng.uniform(0.01, 10.0, size=3)
        p, d = evaluate_rates(system, c)
        assert p[1, 0] == pytest.approx(c[0] * c[1] / (c[0] + 1.0))
        assert d[0, 1] == p[1, 0]
        assert p[2, 1] == pytest.approx(0.3 * c[1])


def test_algal_detritus_rate_is_nonnegative():
    system = nonlinear_problem().system
    rng = np.random.default_rng(37)
    for _ in range(20):
        c = rng.uniform(0.0, 10.0, size=3) + 1e-9
        assert total_exchange(system, c)[2] >= 0.0


def test_robertson_problem_definition():
    problem = robertson_problem()
    eps = POSITIVITY_FLOOR
    assert np.array_equal(problem.c0, [1.0 - 2 * eps, eps, eps])
    assert problem.c0.sum() == 1.0  # exactly, by construction
    assert problem.t_span == (1e-6, 1e10)
    assert problem.geometric_dt0 == 1e-6


def test_robertson_quadratic_channel():
    system = robertson_problem().system
    p, _ = evaluate_rates(system, np.array([0.5, 1e-3, 0.25]))
    assert p[2, 1] == pytest.approx(30.0)          # 3e7 * (1e-3)**2
    assert p[0, 1] == pytest.approx(1e4 * 1e-3 * 0.25)
    assert p[1, 0] == pytest.approx(0.02)


def test_robertson_schedule_spans_ten_decades():
    schedule = robertson_problem().default_schedule()
    assert len(schedule.dts) == 54
    assert schedule.times[-1] >= 1e10


@pytest.mark.parametrize("name", ["linear", "algal", "robertson"])
def test_rate_tables_are_exactly_conservative(name):
    problem = get_problem(name)
    rng = np.random.default_rng(len(name))
    states = [rng.uniform(1e-6, 10.0, size=problem.system.dimension)
              for _ in range(100)]
    report = check_conservative_structure(problem.system, states, tol=0.0)
    assert report, f"worst violation {report.max_violation} at {report.worst_pair}"
    assert problem.system.fully_conservative
