"""Error metrics, convergence studies and CSV emission.

The primary error metric is a trajectory-averaged root-mean-square over
constituents::

    E = (1/N) * sum_{n=1..N} sqrt( (1/I) * sum_i (exact_i(t_n) - c_i^n)**2 )

with the outer 1/N deliberately outside the square root so reported values
line up with the convention used by the error-decay studies this harness
reproduces.  A final-time max-norm error is available as a secondary
metric; the two rarely disagree about the convergence order.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .problems import BenchmarkProblem
from .scheme import MPDeCConfig, StepSchedule, Trajectory, integrate

ExactSolution = Callable[[float], np.ndarray]


def discrete_l2_error(trajectory: Trajectory, exact: ExactSolution) -> float:
    """Trajectory-averaged RMS distance to ``exact`` (initial state excluded)."""
    n_steps = len(trajectory) - 1
    if n_steps < 1:
        raise ValueError("trajectory must contain at least one step")
    total = 0.0
    for n in range(1, n_steps + 1):
        diff = exact(trajectory.times[n]) - trajectory.states[n]
        total += math.sqrt(float(np.mean(diff * diff)))
    return total / n_steps


def final_time_error(trajectory: Trajectory, exact: ExactSolution) -> float:
    """Max-norm error at the last recorded time (secondary metric)."""
    diff = exact(trajectory.times[-1]) - trajectory.states[-1]
    return float(np.max(np.abs(diff)))


def successive_refinement_error(coarse: Trajectory, fine: Trajectory) -> float:
    """RMS comparison of a run against its half-step refinement.

    ``fine`` must have exactly twice the steps of ``coarse`` on aligned
    times; state ``n`` of the coarse run is compared with state ``2n``.
    """
    n_coarse = len(coarse) - 1
    n_fine = len(fine) - 1
    if n_fine != 2 * n_coarse or n_coarse < 1:
        raise ValueError(
            f"refinement must double the step count, got {n_coarse} vs {n_fine}")
    if not np.allclose(fine.times[::2], coarse.times, rtol=1e-12, atol=1e-12):
        raise ValueError("trajectories are not time-aligned")
    total = 0.0
    for n in range(1, n_coarse + 1):
        diff = coarse.states[n] - fine.states[2 * n]
        total += math.sqrt(float(np.mean(diff * diff)))
    return total / n_coarse


@dataclass(frozen=True)
class ErrorRow:
    dt: float
    error: float
    slope: float | None  # vs the previous (coarser) row; None on the first


@dataclass(frozen=True)
class ErrorReport:
    problem: str
    M: int
    K: int
    rows: tuple[ErrorRow, ...]

    @property
    def final_slope(self) -> float | None:
        for row in reversed(self.rows):
            if row.slope is not None:
                return row.slope
        return None


def pairwise_slope(error_coarse: float, error_fine: float,
                   refinement: float = 2.0) -> float | None:
    """Observed order between two refinements; None when undefined."""
    if error_coarse <= 0.0 or error_fine <= 0.0:
        return None
    return math.log(error_coarse / error_fine) / math.log(refinement)


def convergence_study(problem: BenchmarkProblem, config: MPDeCConfig,
                      dts: Sequence[float]) -> ErrorReport:
    """Integrate at each step size and report errors and pairwise slopes.

    Step sizes must halve between consecutive entries.  Problems with a
    closed-form solution are measured against it; otherwise each run is
    measured against its own half-step refinement, which costs one extra
    integration beyond the requested list.
    """
    dts = [float(dt) for dt in dts]
    if not dts:
        raise ValueError("need at least one step size")
    for coarse, fine in zip(dts, dts[1:]):
        if not math.isclose(fine, coarse / 2.0, rel_tol=1e-12):
            raise ValueError(f"step sizes must halve, got {coarse} -> {fine}")
    if problem.geometric_dt0 is not None:
        raise ValueError(
            f"problem {problem.name!r} uses a geometric schedule; "
            "fixed-step refinement does not apply")

    t0, t_end = problem.t_span

    def run(dt: float) -> Trajectory:
        return integrate(problem.system, problem.c0,
                         StepSchedule.from_span(t0, t_end, dt), config)

    trajectories = [run(dt) for dt in dts]
    if problem.analytic_solution is not None:
        errors = [discrete_l2_error(traj, problem.analytic_solution)
                  for traj in trajectories]
    else:
        trajectories.append(run(dts[-1] / 2.0))
        errors = [successive_refinement_error(coarse, fine)
                  for coarse, fine in zip(trajectories, trajectories[1:])]

    rows = []
    previous_error = None
    for dt, error in zip(dts, errors):
        slope = None if previous_error is None else pairwise_slope(previous_error, error)
        rows.append(ErrorRow(dt=dt, error=error, slope=slope))
        previous_error = error
    return ErrorReport(problem=problem.name, M=config.M, K=config.K,
                       rows=tuple(rows))


# --- CSV interchange ---------------------------------------------------
#
# Trajectories:   t,c_1,...,c_I,sum
# Error reports:  dt,error,slope          (slope empty on the first row)
#
# Values are written with 17 significant digits (lossless for float64),
# LF line endings, no trailing delimiter.


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit_csv(obj: Trajectory | ErrorReport, dest) -> None:
    """Write a trajectory or error report to ``dest`` (path or text file)."""
    if not hasattr(dest, "write"):
        with open(dest, "w", newline="") as fh:
            emit_csv(obj, fh)
        return
    out: io.TextIOBase = dest
    if isinstance(obj, Trajectory):
        dim = obj.states.shape[1]
        out.write("t," + ",".join(f"c_{i + 1}" for i in range(dim)) + ",sum\n")
        for t, state in obj:
            fields = [_fmt(t), *(_fmt(v) for v in state), _fmt(float(np.sum(state)))]
            out.write(",".join(fields) + "\n")
    elif isinstance(obj, ErrorReport):
        out.write("dt,error,slope\n")
        for row in obj.rows:
            slope = "" if row.slope is None else _fmt(row.slope)
            out.write(f"{_fmt(row.dt)},{_fmt(row.error)},{slope}\n")
    else:
        raise TypeError(f"cannot emit {type(obj).__name__} as CSV")


def read_trajectory_csv(source) -> Trajectory:
    """Inverse of :func:`emit_csv` for trajectories (sum column dropped)."""
    if not hasattr(source, "read"):
        with open(source, "r", newline="") as fh:
            return read_trajectory_csv(fh)
    lines = [line.rstrip("\n") for line in source if line.strip()]
    header = lines[0].split(",")
    if header[0] != "t" or header[-1] != "sum":
        raise ValueError(f"not a trajectory CSV (header {lines[0]!r})")
    times, states = [], []
    for line in lines[1:]:
        fields = line.split(",")
        times.append(float(fields[0]))
        states.append([float(v) for v in fields[1:-1]])
    return Trajectory(times=np.array(times), states=np.array(states))
