"""Reference and contrast integrators.

These are the schemes the mPDeC family is measured against: explicit Euler
(conservative, loses positivity), Patankar Euler (positive, loses
conservation), modified Patankar Euler (both, first order; the order-one
oracle for the deferred-correction scheme), the classical unmodified
deferred correction (high order, conservative, loses positivity), and a
ten-stage fourth-order strong-stability-preserving Runge-Kutta integrator
used to produce reference trajectories where no closed-form solution
exists.
"""

from __future__ import annotations

import numpy as np

from . import linsolve
from .dec_tables import build_tables
from .pds import ProductionDestructionSystem, evaluate_rates, total_exchange
from .scheme import Trajectory


def explicit_euler_step(system: ProductionDestructionSystem,
                        c: np.ndarray, dt: float) -> np.ndarray:
    """Forward Euler.  Preserves the constituent sum but not positivity:
    any destruction-dominated constituent goes negative once ``dt`` exceeds
    ``c_i / (D_i - P_i)``."""
    c = np.asarray(c, dtype=float)
    return c + dt * total_exchange(system, c)


def patankar_euler_step(system: ProductionDestructionSystem,
                        c: np.ndarray, dt: float) -> np.ndarray:
    """Euler with destruction weighted by ``c_new / c_old``.

    The weighting decouples into one scalar relation per constituent,
    ``c_new = (c + dt * P) / (1 + dt * D / c)``, which is positive for any
    step size but no longer conserves the total.
    """
    c = np.asarray(c, dtype=float)
    p, d = evaluate_rates(system, c)
    production = p.sum(axis=1)
    destruction = d.sum(axis=1)
    return (c + dt * production) / (1.0 + dt * destruction / c)


def modified_patankar_euler_step(system: ProductionDestructionSystem,
                                 c: np.ndarray, dt: float) -> np.ndarray:
    """Euler with both production and destruction Patankar-weighted.

    Weighting production by ``c_new_j / c_j`` as well couples the system:
    ``A[i, i] = 1 + dt * sum_k d[i, k] / c_i`` and
    ``A[i, j] = -dt * p[i, j] / c_j`` solved against ``c``.  Positive and
    conservative, first order.
    """
    c = np.asarray(c, dtype=float)
    p, d = evaluate_rates(system, c)
    a = -dt * (p / c[None, :])
    a[np.diag_indices(system.dimension)] = 1.0 + dt * (d.sum(axis=1) / c)
    return linsolve.solve(a, c)


def classical_dec_step(system: ProductionDestructionSystem, c: np.ndarray,
                       dt: float, M: int, K: int) -> np.ndarray:
    """Unmodified deferred correction (no Patankar weighting).

    Each correction is the explicit update
    ``c^{m,(k)} = c^0 + dt * sum_r theta[m, r] * E(c^{r,(k-1)})``.
    Conservative and of order ``min(M + 1, K)``, but the negative
    quadrature weights can push states negative.
    """
    c = np.asarray(c, dtype=float)
    tables = build_tables(M)
    grid = np.tile(c, (M + 1, 1))
    for _ in range(K):
        exchange = np.array([total_exchange(system, grid[r]) for r in range(M + 1)])
        grid = c + dt * tables.theta @ exchange
        grid[0] = c
    return grid[M]


def ssprk104_step(system: ProductionDestructionSystem,
                  c: np.ndarray, dt: float) -> np.ndarray:
    """Ten-stage fourth-order SSP Runge-Kutta step (low-storage form)."""

    def rhs(state: np.ndarray) -> np.ndarray:
        return total_exchange(system, state)

    q1 = np.asarray(c, dtype=float).copy()
    q2 = q1.copy()
    for _ in range(5):
        q1 += (dt / 6.0) * rhs(q1)
    q2 = 0.04 * q2 + 0.36 * q1
    q1 = 15.0 * q2 - 5.0 * q1
    for _ in range(4):
        q1 += (dt / 6.0) * rhs(q1)
    return q2 + 0.6 * q1 + (dt / 10.0) * rhs(q1)


def ssprk104_integrate(system: ProductionDestructionSystem, c0: np.ndarray,
                       dt: float, n_steps: int, t0: float = 0.0) -> Trajectory:
    """Fixed-step reference trajectory with the ten-stage SSP-RK scheme."""
    c = np.asarray(c0, dtype=float)
    states = np.empty((n_steps + 1, c.shape[0]))
    states[0] = c
    for n in range(1, n_steps + 1):
        c = ssprk104_step(system, c, dt)
        states[n] = c
    times = t0 + dt * np.arange(n_steps + 1)
    return Trajectory(times=times, states=states)
