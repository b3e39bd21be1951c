"""Rate-table evaluation and conservation-structure validation."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mpdec import (
    NonFiniteRateError,
    ProductionDestructionSystem,
    check_conservative_structure,
    evaluate_rates,
    get_problem,
    system_from_table,
    total_exchange,
)

from conftest import random_positive_state, random_system


@pytest.fixture
def linear_system():
    return get_problem("linear").system


def zero_rate_system(dim=3):
    return system_from_table("inert", dim, lambda c: {})


def test_linear_rates_at_reference_state(linear_system):
    p, d = evaluate_rates(linear_system, np.array([0.9, 0.1]))
    assert p[0, 1] == pytest.approx(0.1)
    assert p[1, 0] == pytest.approx(4.5)
    assert p[0, 0] == p[1, 1] == 0.0
    assert np.array_equal(d, p.T)


def test_zero_rates_give_zero_tables():
    p, d = evaluate_rates(zero_rate_system(), np.array([1.0, 2.0, 3.0]))
    assert not p.any() and not d.any()


def test_algal_rates_by_substitution():
    system = get_problem("algal").system
    c = np.array([9.98, 0.01, 0.01])
    p, _ = evaluate_rates(system, c)
    assert p[1, 0] == pytest.approx(9.98 * 0.01 / 10.98)
    assert p[2, 1] == pytest.approx(0.003)
    assert np.count_nonzero(p) == 2


def test_linear_total_exchange(linear_system):
    e = total_exchange(linear_system, np.array([0.9, 0.1]))
    assert e == pytest.approx([-4.4, 4.4])


def test_zero_rate_total_exchange():
    assert np.array_equal(
        total_exchange(zero_rate_system(), np.ones(3)), np.zeros(3))


def test_robertson_total_exchange_at_pure_first_component():
    system = get_problem("robertson").system
    e = total_exchange(system, np.array([1.0, 0.0, 0.0]))
    assert e == pytest.approx([-0.04, 0.04, 0.0], abs=1e-18)


def test_dimension_mismatch_rejected(linear_system):
    with pytest.raises(ValueError, match="shape"):
        evaluate_rates(linear_system, np.array([1.0, 2.0, 3.0]))


def test_non_finite_state_rejected(linear_system):
    with pytest.raises(ValueError, match="non-finite"):
        evaluate_rates(linear_system, np.array([1.0, np.inf]))


def test_non_finite_rates_flagged():
    bad = system_from_table("overflow", 2, lambda c: {(0, 1): float("inf") * c[1]})
    with pytest.raises(NonFiniteRateError):
        evaluate_rates(bad, np.ones(2))


def test_structure_check_passes_linear(linear_system):
    rng = np.random.default_rng(7)
    states = [random_positive_state(rng, 2) for _ in range(100)]
    report = check_conservative_structure(linear_system, states, tol=0.0)
    assert report
    assert report.max_violation == 0.0
    assert report.states_checked == 100


def test_structure_check_catches_broken_table():
    def rates(c):
        p = np.zeros((2, 2))
        d = np.zeros((2, 2))
        p[0, 1] = c[1]
        d[1, 0] = 2.0 * c[1]
        return p, d

    broken = ProductionDestructionSystem(dimension=2, rates=rates, name="broken")
    report = check_conservative_structure(broken, [np.array([1.0, 1.0])], tol=0.0)
    assert not report
    assert report.worst_pair == (0, 1)
    assert report.max_violation == pytest.approx(1.0)
    assert np.array_equal(report.worst_state, [1.0, 1.0])


def test_structure_check_passes_robertson():
    system = get_problem("robertson").system
    rng = np.random.default_rng(11)
    states = [rng.uniform(1e-8, 1.0, size=3) for _ in range(50)]
    assert check_conservative_structure(system, states, tol=0.0)


def test_structure_check_flags_nonzero_diagonal():
    diag = system_from_table("selfloop", 2, lambda c: {(0, 0): 1.0})
    report = check_conservative_structure(diag, [np.ones(2)], tol=0.0)
    assert not report
    assert report.worst_pair == (0, 0)


def test_structure_check_rejects_nonpositive_samples(linear_system):
    with pytest.raises(ValueError, match="strictly positive"):
        check_conservative_structure(linear_system, [np.array([1.0, 0.0])])


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1),
       name=st.sampled_from(["linear", "algal", "robertson"]))
def test_builtin_rate_invariants(seed, name):
    system = get_problem(name).system
    rng = np.random.default_rng(seed)
    c = random_positive_state(rng, system.dimension)
    p, d = evaluate_rates(system, c)
    assert np.all(p >= 0.0) and np.all(d >= 0.0)
    assert np.array_equal(p.T, d)
    scale = np.abs(p).sum() + np.abs(d).sum()
    assert abs(total_exchange(system, c).sum()) <= 10 * np.finfo(float).eps * scale


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 6))
def test_random_system_rate_invariants(seed, dim):
    rng = np.random.default_rng(seed)
    system = random_system(rng, dim)
    c = random_positive_state(rng, dim)
    p, d = evaluate_rates(system, c)
    assert np.all(p >= 0.0) and np.all(d >= 0.0)
    scale = np.abs(p).sum() + np.abs(d).sum()
    assert abs(total_exchange(system, c).sum()) <= 10 * np.finfo(float).eps * scale
