"""Weight tables: frozen exact values, invariants, and a quadrature oracle."""

import io
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mpdec.dec_tables import (
    build_tables,
    dump_tables_csv,
    lagrange_basis_value,
    MAX_SUBINTERVALS,
)


def test_m1_matches_trapezoidal_weights():
    tables = build_tables(1)
    assert np.array_equal(tables.theta, [[0.0, 0.0], [0.5, 0.5]])
    assert np.array_equal(tables.nodes, [0.0, 1.0])
    assert np.array_equal(tables.beta, [0.0, 1.0])


def test_m2_matches_hand_integration():
    # Antiderivatives of the three quadratic basis polynomials evaluated at
    # 1/2 and 1: (5/24, 8/24, -1/24) and Simpson's (1/6, 4/6, 1/6).
    tables = build_tables(2)
    row1 = [Fraction(5, 24), Fraction(8, 24), Fraction(-1, 24)]
    row2 = [Fraction(1, 6), Fraction(4, 6), Fraction(1, 6)]
    assert np.max(np.abs(tables.theta[1] - [float(x) for x in row1])) <= 1e-15
    assert np.max(np.abs(tables.theta[2] - [float(x) for x in row2])) <= 1e-15


def test_row_zero_is_empty_interval():
    for M in (1, 3, 7):
        assert np.array_equal(build_tables(M).theta[0], np.zeros(M + 1))


@pytest.mark.parametrize("M", range(1, 11))
def test_row_sums_equal_node_positions(M):
    tables = build_tables(M)
    for m in range(M + 1):
        assert abs(tables.theta[m].sum() - m / M) <= 1e-14


@pytest.mark.parametrize("M", range(2, 11))
def test_negative_weights_appear_beyond_m1(M):
    assert build_tables(M).theta.min() < 0.0


def test_m2_negative_entry_value():
    assert build_tables(2).theta[1, 2] == pytest.approx(-1 / 24, abs=1e-17)


def test_beta_is_node_fraction():
    tables = build_tables(5)
    assert np.array_equal(tables.beta, np.arange(6) / 5)
    assert tables.beta[0] == 0.0 and tables.beta[5] == 1.0


@pytest.mark.parametrize("M", range(1, 8))
def test_gauss_legendre_oracle(M):
    # Independent route: integrate each basis polynomial over [0, node_m]
    # with a Gauss-Legendre rule that is exact for its degree.
    tables = build_tables(M)
    points, weights = np.polynomial.legendre.leggauss(M + 2)
    for m in range(M + 1):
        upper = tables.nodes[m]
        scaled = 0.5 * upper * (points + 1.0)
        for r in range(M + 1):
            values = [lagrange_basis_value(tables.nodes, r, s) for s in scaled]
            quad = 0.5 * upper * np.dot(weights, values)
            assert quad == pytest.approx(tables.theta[m, r], abs=5e-15)


def test_rebuild_is_bit_identical():
    first = build_tables(6).theta.copy()
    build_tables.cache_clear()
    assert np.array_equal(first, build_tables(6).theta)


def test_tables_are_read_only():
    tables = build_tables(3)
    with pytest.raises(ValueError):
        tables.theta[0, 0] = 1.0


@pytest.mark.parametrize("M", [0, -1, MAX_SUBINTERVALS + 1])
def test_out_of_range_m_rejected(M):
    with pytest.raises(ValueError):
        build_tables(M)


def test_non_integer_m_rejected():
    with pytest.raises(ValueError):
        build_tables(2.0)


def test_basis_interpolation_property():
    nodes = build_tables(4).nodes
    for r in range(5):
        for m in range(5):
            expected = 1.0 if r == m else 0.0
            assert lagrange_basis_value(nodes, r, nodes[m]) == pytest.approx(
                expected, abs=1e-13)


def test_basis_partition_of_unity_spot_value():
    nodes = build_tables(4).nodes
    total = sum(lagrange_basis_value(nodes, r, 0.3) for r in range(5))
    assert abs(total - 1.0) <= 1e-14


def test_basis_linear_closed_form():
    assert lagrange_basis_value(np.array([0.0, 1.0]), 1, 0.25) == pytest.approx(0.25)


def test_basis_degenerate_nodes_rejected():
    with pytest.raises(ValueError):
        lagrange_basis_value(np.array([0.3, 0.3]), 0, 0.5)


@given(M=st.integers(1, 10), s=st.floats(0.0, 1.0))
def test_basis_partition_of_unity(M, s):
    nodes = build_tables(M).nodes
    total = sum(lagrange_basis_value(nodes, r, s) for r in range(M + 1))
    assert abs(total - 1.0) <= 1e-11


def test_csv_dump_round_trips():
    tables = build_tables(3)
    buffer = io.StringIO()
    dump_tables_csv(tables, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0].split(",")[:2] == ["m", "beta"]
    assert len(lines) == tables.M + 2
    for m, line in enumerate(lines[1:]):
        fields = line.split(",")
        assert int(fields[0]) == m
        assert float(fields[1]) == tables.beta[m]
        assert [float(v) for v in fields[2:]] == list(tables.theta[m])
