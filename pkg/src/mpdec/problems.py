"""Built-in benchmark systems.

Three classics with very different characters: a linear two-constituent
exchange with a closed-form solution (order measurements), a mildly
nonlinear three-constituent algal-bloom chain (reference-based
measurements), and the Robertson chemical kinetics system whose rate
constants span nine orders of magnitude (stiffness and robustness).  All
rate tables are built from sparse exchange entries with the destruction
table defined as the exact transpose of the production table, so the
conservation structure holds identically, not just approximately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .pds import ProductionDestructionSystem, system_from_table
from .scheme import POSITIVITY_FLOOR, StepSchedule


@dataclass(frozen=True)
class BenchmarkProblem:
    """A system plus everything needed to run and judge it."""

    system: ProductionDestructionSystem
    c0: np.ndarray
    t_span: tuple[float, float]
    default_dt: float | None = None      # fixed-step problems
    geometric_dt0: float | None = None   # stiff problems with growing steps
    reference_note: str = ""

    @property
    def name(self) -> str:
        return self.system.name

    @property
    def analytic_solution(self) -> Callable[[float], np.ndarray] | None:
        return self.system.analytic_solution

    @property
    def conserved_total(self) -> float:
        return float(np.sum(self.c0))

    def default_schedule(self) -> StepSchedule:
        t0, t_end = self.t_span
        if self.geometric_dt0 is not None:
            return StepSchedule.geometric(t0, self.geometric_dt0, t_end)
        return StepSchedule.from_span(t0, t_end, self.default_dt)


def linear_problem() -> BenchmarkProblem:
    """Two constituents exchanging mass at rates ``c2`` and ``5 c1``.

    With total mass 1 the first component relaxes to the equilibrium 1/6
    along ``c1(t) = 1/6 + (c1(0) - 1/6) exp(-6 t)``.
    """
    c0 = np.array([0.9, 0.1])
    equilibrium = 1.0 / 6.0
    amplitude = c0[0] - equilibrium

    def exact(t: float) -> np.ndarray:
        c1 = equilibrium + amplitude * np.exp(-6.0 * t)
        return np.array([c1, 1.0 - c1])

    system = system_from_table(
        "linear", 2,
        lambda c: {(0, 1): c[1], (1, 0): 5.0 * c[0]},
        analytic_solution=exact,
    )
    return BenchmarkProblem(system=system, c0=c0, t_span=(0.0, 1.75),
                            default_dt=0.25)


def nonlinear_problem() -> BenchmarkProblem:
    """Algal bloom chain: nutrients -> phytoplankton -> detritus.

    Uptake saturates as ``c1 c2 / (c1 + 1)``; decay to detritus is linear
    at rate 0.3.  No closed form; reference trajectories come from the
    ten-stage fourth-order SSP Runge-Kutta integrator at dt = 1e-3.
    """
    system = system_from_table(
        "algal", 3,
        lambda c: {(1, 0): c[0] * c[1] / (c[0] + 1.0),
                   (2, 1): 0.3 * c[1]},
    )
    return BenchmarkProblem(
        system=system, c0=np.array([9.98, 0.01, 0.01]), t_span=(0.0, 30.0),
        default_dt=0.5,
        reference_note="SSP-RK(10,4) at dt=1e-3",
    )


def robertson_problem() -> BenchmarkProblem:
    """Robertson chemical kinetics, rate constants 0.04 / 1e4 / 3e7.

    The quadratic channel is ``3e7 * c2**2`` (table entry ``c2**2``, not
    ``c2``, which is what makes the table conservative).  The initial state
    is shifted off the axes by the positivity floor so the Patankar
    denominators are defined, keeping the exact total at 1; the geometric
    schedule doubles the step from 1e-6 to cover ten decades of time.
    """
    eps = POSITIVITY_FLOOR
    system = system_from_table(
        "robertson", 3,
        lambda c: {(0, 1): 1e4 * c[1] * c[2],
                   (1, 0): 0.04 * c[0],
                   (2, 1): 3e7 * c[1] ** 2},
    )
    return BenchmarkProblem(
        system=system, c0=np.array([1.0 - 2.0 * eps, eps, eps]),
        t_span=(1e-6, 1e10), geometric_dt0=1e-6,
        reference_note="mPDeC order 5 on the 32x-refined geometric schedule",
    )


_BUILDERS: dict[str, Callable[[], BenchmarkProblem]] = {
    "linear": linear_problem,
    "algal": nonlinear_problem,
    "robertson": robertson_problem,
}


def problem_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def get_problem(name: str) -> BenchmarkProblem:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(
            f"unknown problem {name!r}; available: {', '.join(_BUILDERS)}"
        ) from None
    return builder()
