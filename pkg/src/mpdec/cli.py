"""Command-line interface.

Exit codes: 0 on success, 1 on validation errors (unknown problem, bad
parameters, malformed usage), 2 on numerical failures.  Data goes to the
output path or stdout; anything diagnostic goes to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .backend import active_backend_name
from .exceptions import NumericalError
from .harness import convergence_study, emit_csv
from .problems import get_problem, problem_names
from .scheme import MPDeCConfig, StepSchedule, integrate

MIN_ORDER, MAX_ORDER = 2, 10


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mpdec",
                     description="Positivity-preserving, conservative "
                                 "time integration for production-destruction systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", help="integrate a problem and emit the trajectory")
    solve.add_argument("--problem", required=True, help="problem name; see list-problems")
    solve.add_argument("--order", type=int, default=2,
                       help=f"scheme order in [{MIN_ORDER}, {MAX_ORDER}] (default 2)")
    solve.add_argument("--M", type=int, default=None, dest="subintervals",
                       help="override the number of subintervals")
    solve.add_argument("--K", type=int, default=None, dest="corrections",
                       help="override the number of corrections")
    solve.add_argument("--dt", type=float, default=None, help="fixed step size")
    solve.add_argument("--schedule", choices=["geometric"], default=None,
                       help="use a doubling step schedule (requires --dt0)")
    solve.add_argument("--dt0", type=float, default=None,
                       help="first step of the geometric schedule")
    solve.add_argument("--t-end", type=float, default=None, dest="t_end",
                       help="override the problem's final time")
    solve.add_argument("--out", type=Path, default=None,
                       help="trajectory CSV path (default: stdout)")

    conv = sub.add_parser("convergence", help="run a step-refinement error study")
    conv.add_argument("--problem", required=True)
    conv.add_argument("--orders", required=True,
                      help="comma-separated scheme orders, e.g. 2,3,5")
    conv.add_argument("--refinements", type=int, required=True,
                      help="number of step halvings to run")
    conv.add_argument("--M", type=int, default=None, dest="subintervals")
    conv.add_argument("--K", type=int, default=None, dest="corrections")
    conv.add_argument("--out", type=Path, default=None,
                      help="error-report CSV path; with several orders the "
                           "order is appended to the stem (default: stdout)")

    sub.add_parser("list-problems", help="print the available problem names")
    return parser


def _config(order: int, subintervals: int | None, corrections: int | None) -> MPDeCConfig:
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [{MIN_ORDER}, {MAX_ORDER}], got {order}")
    M = subintervals if subintervals is not None else order - 1
    K = corrections if corrections is not None else order
    return MPDeCConfig(M=M, K=K)


def _emit(obj, dest: Path | None) -> None:
    if dest is None:
        emit_csv(obj, sys.stdout)
    else:
        emit_csv(obj, dest)
        print(f"wrote {dest}", file=sys.stderr)


def _run_solve(args) -> None:
    problem = get_problem(args.problem)
    config = _config(args.order, args.subintervals, args.corrections)
    t0, t_end = problem.t_span
    if args.t_end is not None:
        t_end = args.t_end
    if args.dt is not None and args.schedule is not None:
        raise ValueError("--dt and --schedule geometric are mutually exclusive")
    if args.schedule == "geometric":
        if args.dt0 is None:
            raise ValueError("--schedule geometric requires --dt0")
        schedule = StepSchedule.geometric(t0, args.dt0, t_end)
    elif args.dt is not None:
        schedule = StepSchedule.from_span(t0, t_end, args.dt)
    elif problem.geometric_dt0 is not None:
        schedule = StepSchedule.geometric(t0, problem.geometric_dt0, t_end)
    else:
        schedule = StepSchedule.from_span(t0, t_end, problem.default_dt)

    print(f"solving {problem.name!r} with M={config.M} K={config.K} "
          f"({len(schedule.dts)} steps, {active_backend_name()} backend)",
          file=sys.stderr)
    trajectory = integrate(problem.system, problem.c0, schedule, config)
    _emit(trajectory, args.out)


def _run_convergence(args) -> None:
    problem = get_problem(args.problem)
    try:
        orders = [int(p) for p in args.orders.split(",") if p.strip()]
    except ValueError:
        raise ValueError(f"--orders must be comma-separated integers, "
                         f"got {args.orders!r}") from None
    if not orders:
        raise ValueError("--orders must name at least one order")
    if args.refinements < 1:
        raise ValueError(f"--refinements must be >= 1, got {args.refinements}")
    if problem.default_dt is None:
        raise ValueError(f"problem {problem.name!r} has no fixed-step schedule "
                         "to refine")

    dts = [problem.default_dt / 2 ** j for j in range(args.refinements)]
    for order in orders:
        config = _config(order, args.subintervals, args.corrections)
        print(f"convergence study: {problem.name!r} order {order} "
              f"(M={config.M} K={config.K}), {len(dts)} refinements",
              file=sys.stderr)
        report = convergence_study(problem, config, dts)
        if args.out is None:
            _emit(report, None)
        elif len(orders) == 1:
            _emit(report, args.out)
        else:
            _emit(report, args.out.with_stem(f"{args.out.stem}_order{order}"))


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            _run_solve(args)
        elif args.command == "convergence":
            _run_convergence(args)
        elif args.command == "list-problems":
            for name in problem_names():
                print(name)
    except ValueError as exc:
        print(f"mpdec: error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"mpdec: numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
