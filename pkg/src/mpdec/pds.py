"""Production-destruction ODE systems.

A system of ``I`` constituents evolves as ``dc_i/dt = P_i(c) - D_i(c)``
where both aggregate rates split into pairwise exchange tables::

    P_i(c) = sum_j p[i, j](c),    D_i(c) = sum_j d[i, j](c),

with every table entry nonnegative: ``d[i, j]`` is the rate at which
constituent ``i`` turns into ``j`` and ``p[i, j]`` the rate at which ``j``
turns into ``i``.  When ``p[i, j](c) == d[j, i](c)`` for all pairs, mass
moves between constituents without being created or destroyed, so the total
``sum_i c_i`` is a conserved quantity; that structure is what the
integrators in this package preserve exactly.

Rate tables are dense ``(I, I)`` arrays; the systems of interest have a few
dozen constituents at most, so sparse storage would only add indirection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .exceptions import NonFiniteRateError

RateEvaluator = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class ProductionDestructionSystem:
    """A production-destruction system given by its rate tables.

    ``rates`` maps a positive state vector of length ``dimension`` to the
    pair ``(p, d)`` of nonnegative ``(dimension, dimension)`` arrays.  The
    ``conservative`` flag declares ``p[i, j] == d[j, i]``; it is validated
    by sampling (see :func:`check_conservative_structure`), not inferred.
    ``fully_conservative`` additionally declares zero diagonals.
    """

    dimension: int
    rates: RateEvaluator
    name: str = ""
    analytic_solution: Callable[[float], np.ndarray] | None = None
    conservative: bool = True
    fully_conservative: bool = True

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be positive, got {self.dimension}")
        if self.fully_conservative and not self.conservative:
            raise ValueError("fully_conservative implies conservative")


def evaluate_rates(system: ProductionDestructionSystem,
                   c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the (p, d) rate tables at state ``c``, with validation."""
    c = np.asarray(c, dtype=float)
    if c.shape != (system.dimension,):
        raise ValueError(
            f"state has shape {c.shape}, expected ({system.dimension},)")
    if not np.all(np.isfinite(c)):
        raise ValueError(f"state contains non-finite entries: {c}")
    p, d = system.rates(c)
    p = np.ascontiguousarray(p, dtype=float)
    d = np.ascontiguousarray(d, dtype=float)
    expected = (system.dimension, system.dimension)
    if p.shape != expected or d.shape != expected:
        raise ValueError(
            f"rate tables have shapes {p.shape}/{d.shape}, expected {expected}")
    if not (np.all(np.isfinite(p)) and np.all(np.isfinite(d))):
        raise NonFiniteRateError(
            f"system {system.name!r} produced non-finite rates at c={c}")
    return p, d


def total_exchange(system: ProductionDestructionSystem, c: np.ndarray) -> np.ndarray:
    """Net rate ``P_i(c) - D_i(c)`` per constituent; sums to zero when conservative."""
    p, d = evaluate_rates(system, c)
    return (p - d).sum(axis=1)


@dataclass(frozen=True)
class StructureReport:
    """Outcome of sampling-based validation of the conservation structure."""

    passed: bool
    max_violation: float
    worst_pair: tuple[int, int] | None = None
    worst_state: np.ndarray | None = None
    states_checked: int = 0

    def __bool__(self) -> bool:
        return self.passed


def check_conservative_structure(system: ProductionDestructionSystem,
                                 sample_states: Sequence[np.ndarray],
                                 tol: float = 0.0) -> StructureReport:
    """Check ``p[i, j](c) == d[j, i](c)`` (within ``tol``) over sample states.

    For systems flagged ``fully_conservative`` the diagonals must also
    vanish.  Returns a report naming the worst offending (i, j, state)
    rather than raising, so callers can surface it however they like.
    """
    worst = 0.0
    worst_pair: tuple[int, int] | None = None
    worst_state = None
    count = 0
    for c in sample_states:
        c = np.asarray(c, dtype=float)
        if np.any(c <= 0.0):
            raise ValueError(f"sample states must be strictly positive, got {c}")
        p, d = evaluate_rates(system, c)
        gap = np.abs(p - d.T)
        if system.fully_conservative:
            gap[np.diag_indices(system.dimension)] = np.maximum(
                np.abs(np.diag(p)), np.abs(np.diag(d)))
        idx = np.unravel_index(np.argmax(gap), gap.shape)
        if gap[idx] > worst:
            worst = float(gap[idx])
            worst_pair = (int(idx[0]), int(idx[1]))
            worst_state = c.copy()
        count += 1
    passed = worst <= tol
    return StructureReport(
        passed=passed,
        max_violation=worst,
        worst_pair=None if passed else worst_pair,
        worst_state=None if passed else worst_state,
        states_checked=count,
    )


def system_from_table(name: str, dimension: int,
                      entries: Callable[[np.ndarray], dict[tuple[int, int], float]],
                      **kwargs) -> ProductionDestructionSystem:
    """Build a fully conservative system from sparse exchange entries.

    ``entries(c)`` returns ``{(i, j): rate}`` meaning constituent ``j``
    turns into ``i`` at ``rate``; the destruction table is the transpose,
    which makes conservativity hold by construction.
    """

    def rates(c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        p = np.zeros((dimension, dimension))
        for (i, j), value in entries(c).items():
            p[i, j] = value
        return p, p.T.copy()

    return ProductionDestructionSystem(
        dimension=dimension, rates=rates, name=name, **kwargs)
