"""Modified Patankar deferred-correction (mPDeC) time integration.

One step from ``c(t_n)`` works on a grid of ``M + 1`` substates spanning
``[t_n, t_n + dt]``, all initialised to ``c(t_n)``, and sweeps ``K``
corrections over it.  Correction ``k`` solves, independently for every
subtimestep ``m``::

    c_i^{m,(k)} = c_i^0 + dt * sum_r theta[m, r] * sum_j (
        p_ij(c^{r,(k-1)}) * c_g^{m,(k)} / c_g^{m,(k-1)}   [g = j if theta > 0 else i]
      - d_ij(c^{r,(k-1)}) * c_g^{m,(k)} / c_g^{m,(k-1)} ) [g = i if theta > 0 else j]

The Patankar-style weights ``c^{m,(k)} / c^{m,(k-1)}`` make the update
linearly implicit in the new substate: collecting terms gives a mass matrix
with positive diagonal and nonpositive off-diagonal whose index swap
(:func:`gamma`) keeps that sign structure even where the quadrature weights
are negative.  The matrix is strictly diagonally dominant by columns, hence
invertible with nonnegative inverse, which yields positivity; summing the
update over ``i`` cancels production against destruction exactly for
conservative systems, which yields conservation of the constituent total.
Each sweep gains one order of accuracy, up to the ``M + 1`` of the
underlying quadrature, so ``K = M + 1`` corrections give order ``M + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .backend import get_kernels
from .dec_tables import DecTables, build_tables
from .exceptions import PositivityError
from .pds import ProductionDestructionSystem, evaluate_rates

#: Smallest admissible concentration; states are floored here when they
#: enter an integration so exact zeros cannot reach a Patankar denominator.
POSITIVITY_FLOOR = 2.22e-16


@dataclass(frozen=True)
class MPDeCConfig:
    """Scheme parameters: ``M`` subintervals swept by ``K`` corrections.

    The achieved order is ``min(M + 1, K)``, so the single-knob choice is
    ``K = M + 1`` (the default when ``K`` is omitted).  ``eps`` is the
    ingestion floor for initial states and ``solver_tol`` the relative
    pivot threshold of the compiled elimination kernel.
    """

    M: int
    K: int | None = None
    eps: float = POSITIVITY_FLOOR
    solver_tol: float = 1e-12

    def __post_init__(self):
        if self.K is None:
            object.__setattr__(self, "K", self.M + 1)
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if not self.eps > 0.0:
            raise ValueError(f"eps must be positive, got {self.eps}")

    @classmethod
    def of_order(cls, order: int, **kwargs) -> "MPDeCConfig":
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        return cls(M=max(order - 1, 1), K=order, **kwargs)


@dataclass(frozen=True)
class StepSchedule:
    """Ordered positive step sizes covering ``[t0, t0 + sum(dts)]``."""

    t0: float
    dts: tuple[float, ...]

    def __post_init__(self):
        if any(dt <= 0.0 or not math.isfinite(dt) for dt in self.dts):
            raise ValueError("all step sizes must be positive and finite")

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.concatenate([[0.0], np.cumsum(self.dts)])

    @classmethod
    def fixed(cls, t0: float, dt: float, n_steps: int) -> "StepSchedule":
        if n_steps < 0:
            raise ValueError(f"n_steps must be >= 0, got {n_steps}")
        return cls(t0=t0, dts=(dt,) * n_steps)

    @classmethod
    def from_span(cls, t0: float, t_end: float, dt: float) -> "StepSchedule":
        """Fixed steps of ``dt``, the last one truncated to land on ``t_end``."""
        if t_end < t0:
            raise ValueError(f"t_end={t_end} precedes t0={t0}")
        span = t_end - t0
        if span == 0.0:
            return cls(t0=t0, dts=())
        n_full = int(math.floor(span / dt + 1e-12))
        remainder = span - n_full * dt
        if remainder > 1e-12 * max(dt, abs(t_end)):
            return cls(t0=t0, dts=(dt,) * n_full + (remainder,))
        return cls(t0=t0, dts=(dt,) * n_full)

    @classmethod
    def geometric(cls, t0: float, dt0: float, t_end: float,
                  ratio: float = 2.0) -> "StepSchedule":
        """Steps ``dt0 * ratio**n`` until the running time reaches ``t_end``."""
        if t_end <= t0:
            raise ValueError(f"t_end={t_end} must exceed t0={t0}")
        dts = []
        t, dt = t0, dt0
        while t < t_end:
            dts.append(dt)
            t += dt
            dt *= ratio
        return cls(t0=t0, dts=tuple(dts))


@dataclass
class CorrectionGrid:
    """Substates of one correction, with rate tables frozen on demand.

    ``states[m]`` is the state at subtimestep ``m``; ``p_stack``/``d_stack``
    cache the rate evaluations at those states so one sweep evaluates the
    model once per subtimestep, however many matrix entries reuse them.
    """

    states: np.ndarray                    # (M + 1, dim)
    p_stack: np.ndarray | None = field(default=None, repr=False)
    d_stack: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def constant(cls, c: np.ndarray, M: int) -> "CorrectionGrid":
        return cls(states=np.tile(np.asarray(c, dtype=float), (M + 1, 1)))

    def rate_stacks(self, system: ProductionDestructionSystem
                    ) -> tuple[np.ndarray, np.ndarray]:
        if self.p_stack is None:
            nodes, dim = self.states.shape
            self.p_stack = np.empty((nodes, dim, dim))
            self.d_stack = np.empty((nodes, dim, dim))
            for r in range(nodes):
                self.p_stack[r], self.d_stack[r] = evaluate_rates(
                    system, self.states[r])
        return self.p_stack, self.d_stack


@dataclass(frozen=True)
class Trajectory:
    """States along a whole integration, ``states[n]`` at ``times[n]``."""

    times: np.ndarray    # (N + 1,)
    states: np.ndarray   # (N + 1, dim)

    def __len__(self) -> int:
        return self.times.shape[0]

    def __iter__(self):
        return zip(self.times, self.states)

    @property
    def totals(self) -> np.ndarray:
        return self.states.sum(axis=1)


def gamma(a: int, b: int, theta: float) -> int:
    """Index selector of the Patankar weights: ``a`` for positive weights,
    ``b`` for negative ones.  Zero-weight terms vanish, so callers skip
    them; the value returned for ``theta == 0`` is immaterial."""
    return a if theta >= 0.0 else b


def assemble_mass_matrix(system: ProductionDestructionSystem,
                         grid: CorrectionGrid, tables: DecTables,
                         m: int, dt: float) -> np.ndarray:
    """Mass matrix of the correction solve at subtimestep ``m``, built from
    the previous correction's grid."""
    if not 1 <= m <= tables.M:
        raise ValueError(f"subtimestep must be in [1, {tables.M}], got {m}")
    _require_positive(grid.states, "correction grid")
    p_stack, d_stack = grid.rate_stacks(system)
    return get_kernels().assemble_mass_matrix(
        tables.theta[m], dt, p_stack, d_stack, grid.states[m])


def correction_sweep(system: ProductionDestructionSystem,
                     prev_grid: CorrectionGrid, tables: DecTables,
                     dt: float, c0: np.ndarray) -> CorrectionGrid:
    """Advance one correction: solve all subtimesteps against ``c0``."""
    _require_positive(c0, "step initial state")
    _require_positive(prev_grid.states, "correction grid")
    p_stack, d_stack = prev_grid.rate_stacks(system)
    new_states = get_kernels().sweep_solve(
        tables.theta, dt, p_stack, d_stack, prev_grid.states, c0)
    return CorrectionGrid(states=new_states)


def mpdec_step(system: ProductionDestructionSystem, c: np.ndarray,
               dt: float, config: MPDeCConfig,
               tables: DecTables | None = None) -> np.ndarray:
    """One mPDeC step of size ``dt`` from state ``c``.

    ``c`` must be strictly positive; zeros are rejected rather than floored
    so that model bugs upstream are not silently masked (flooring happens
    once, at :func:`integrate` entry).
    """
    c = np.asarray(c, dtype=float)
    _require_positive(c, "step initial state")
    if tables is None:
        tables = build_tables(config.M)
    grid = CorrectionGrid.constant(c, config.M)
    for _ in range(config.K):
        grid = correction_sweep(system, grid, tables, dt, c)
    return grid.states[config.M]


def integrate(system: ProductionDestructionSystem, c0: np.ndarray,
              schedule: StepSchedule, config: MPDeCConfig) -> Trajectory:
    """March ``c0`` across ``schedule``; states stay positive and their sum
    is conserved (up to round-off) at every recorded time."""
    c = np.maximum(np.asarray(c0, dtype=float), config.eps)
    _require_positive(c, "initial state")
    tables = build_tables(config.M)
    states = np.empty((len(schedule.dts) + 1, c.shape[0]))
    states[0] = c
    for n, dt in enumerate(schedule.dts, start=1):
        c = mpdec_step(system, c, dt, config, tables)
        states[n] = c
    return Trajectory(times=schedule.times, states=states)


def _require_positive(values: np.ndarray, label: str) -> None:
    if not np.all(values > 0.0):
        raise PositivityError(f"{label} must be strictly positive, got {values}")
