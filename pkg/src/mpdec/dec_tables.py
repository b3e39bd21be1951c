"""Quadrature tables for deferred-correction time stepping.

A step ``[t_n, t_n + dt]`` is subdivided by ``M + 1`` equispaced nodes.  The
high-order operator integrates the Lagrange interpolant of the right-hand
side, which reduces to the weights

    theta[m][r] = integral over [node_0, node_m] of the r-th Lagrange basis
                  polynomial on the unit interval,

while the low-order (Euler) operator only needs ``beta[m] = node_m``.  The
weights are computed once per ``M`` with exact rational arithmetic, so the
only error they carry is the final rounding to float64; everything
downstream scales them by ``dt``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

MAX_SUBINTERVALS = 15  # equispaced interpolation degrades past order ~10


@dataclass(frozen=True)
class DecTables:
    """Node layout and quadrature weights for ``M`` subintervals (order M+1)."""

    M: int
    nodes: np.ndarray   # (M+1,) in [0, 1], nodes[0] = 0, nodes[M] = 1
    theta: np.ndarray   # (M+1, M+1), theta[m, r]
    beta: np.ndarray    # (M+1,), beta[m] = nodes[m] for equispaced nodes


def _lagrange_numerator(nodes: list[Fraction], r: int) -> list[Fraction]:
    """Ascending coefficients of prod_{j != r} (s - node_j)."""
    coeffs = [Fraction(1)]
    for j, x in enumerate(nodes):
        if j == r:
            continue
        shifted = [Fraction(0)] + coeffs
        for p, c in enumerate(coeffs):
            shifted[p] -= c * x
        coeffs = shifted
    return coeffs


def _poly_eval(coeffs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def build_tables(M: int) -> DecTables:
    """Build the weight tables for ``M`` subintervals.

    Exact over the rationals: each basis polynomial is expanded in monomial
    form, antidifferentiated, and evaluated at the nodes before any float
    conversion.  Results are cached and returned read-only.
    """
    if not isinstance(M, int) or isinstance(M, bool):
        raise ValueError(f"M must be an integer, got {M!r}")
    if not 1 <= M <= MAX_SUBINTERVALS:
        raise ValueError(f"M must be in [1, {MAX_SUBINTERVALS}], got {M}")

    nodes = [Fraction(m, M) for m in range(M + 1)]
    theta = np.zeros((M + 1, M + 1))
    for r in range(M + 1):
        numerator = _lagrange_numerator(nodes, r)
        denominator = _poly_eval(numerator, nodes[r])
        antiderivative = [Fraction(0)] + [c / (p + 1) for p, c in enumerate(numerator)]
        for m in range(1, M + 1):  # row 0 integrates over an empty interval
            theta[m, r] = float(_poly_eval(antiderivative, nodes[m]) / denominator)

    tables = DecTables(
        M=M,
        nodes=np.array([float(x) for x in nodes]),
        theta=theta,
        beta=np.array([m / M for m in range(M + 1)]),
    )
    for arr in (tables.nodes, tables.theta, tables.beta):
        arr.setflags(write=False)
    return tables


def lagrange_basis_value(nodes: np.ndarray, r: int, s: float) -> float:
    """Value at ``s`` of the r-th Lagrange basis polynomial on ``nodes``."""
    nodes = np.asarray(nodes, dtype=float)
    others = np.delete(nodes, r)
    denom = np.prod(nodes[r] - others)
    if denom == 0.0:
        raise ValueError("interpolation nodes must be distinct")
    return float(np.prod(s - others) / denom)


def dump_tables_csv(tables: DecTables, dest) -> None:
    """Write theta/beta to ``dest`` (path or text file) for inspection."""
    if not hasattr(dest, "write"):
        with open(dest, "w", newline="") as fh:
            dump_tables_csv(tables, fh)
        return
    out: io.TextIOBase = dest
    out.write("m,beta," + ",".join(f"theta_r{r}" for r in range(tables.M + 1)) + "\n")
    for m in range(tables.M + 1):
        row = ",".join(f"{tables.theta[m, r]:.17g}" for r in range(tables.M + 1))
        out.write(f"{m},{tables.beta[m]:.17g},{row}\n")
