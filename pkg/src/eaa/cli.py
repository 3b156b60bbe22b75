"""Command line front end.

Exit codes: 0 success / formula holds, 1 formula fails, 2 parse or
validation error, 3 unsettled trajectory where a settled one is needed.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .automaton import check_solution, default_step, event_lattice, solve
from .branching import DelaySpace, enumerate_paths, eval_formula
from .errors import EAAError, UnsettledTrajectory
from .logic import holds_at
from .parser import parse_formula
from .signals import format_time, parse_time
from .specfile import SpecFile, load_spec
from .trace import write_trace

EXIT_OK, EXIT_FAILS, EXIT_INVALID, EXIT_UNSETTLED = 0, 1, 2, 3


class UsageError(EAAError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_time(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _horizon(spec: SpecFile, override: Fraction | None) -> Fraction:
    horizon = override if override is not None else spec.horizon
    if horizon is None:
        raise UsageError("no horizon: set it under [options] or pass --horizon")
    if horizon < 0:
        raise UsageError("horizon must be non-negative")
    return horizon


def parse_delays(text: str) -> dict[str, list[Fraction]]:
    """``"x1=1/2,2;x2=1"`` -> ``{"x1": [1/2, 2], "x2": [1]}``."""
    choices: dict[str, list[Fraction]] = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        name, eq, values = part.partition("=")
        name = name.strip()
        if not eq or not name:
            raise UsageError(f"malformed --delays entry {part.strip()!r}; expected name=d1,d2,...")
        try:
            choices[name] = [parse_time(v) for v in values.split(",") if v.strip()]
        except ValueError as exc:
            raise UsageError(f"--delays {name}: {exc}") from None
    return choices


def cmd_simulate(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    horizon = _horizon(spec, args.horizon)
    a = spec.automaton
    traj = solve(a, spec.inputs, horizon)
    lattice = event_lattice(spec.inputs, a.delays, horizon)
    summary = [f"settled={'true' if traj.settled else 'false'}", f"lattice={len(lattice)}",
               f"horizon={format_time(horizon)}"]
    if args.verify:
        step = spec.step or default_step(a, spec.inputs, horizon)
        summary.append(f"violations={len(check_solution(a, spec.inputs, traj, step))}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_trace(traj, fh)
        print(" ".join(summary))
    else:
        write_trace(traj, sys.stdout)
        print(" ".join(summary), file=sys.stderr)
    if args.require_settled and not traj.settled:
        return EXIT_UNSETTLED
    return EXIT_OK


def _verdict(value: int, extra: str = "") -> int:
    print(("holds" if value else "fails") + extra)
    return EXIT_OK if value else EXIT_FAILS


def cmd_eval(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    a = spec.automaton
    formula = parse_formula(args.formula, a.state_names + a.input_names)
    traj = solve(a, spec.inputs, _horizon(spec, args.horizon))
    return _verdict(holds_at(formula, traj, args.at))


def cmd_check(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    a = spec.automaton
    formula = parse_formula(args.formula, a.state_names + a.input_names)
    space = DelaySpace.around(a, parse_delays(args.delays or ""))
    paths = enumerate_paths(a, space, spec.inputs, _horizon(spec, args.horizon))
    return _verdict(eval_formula(formula, paths, args.at), f" paths={len(paths)}")


def cmd_events(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    for t in event_lattice(spec.inputs, spec.automaton.delays, _horizon(spec, args.horizon)):
        print(format_time(t))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eaa", description="Simulate asynchronous automata and check temporal formulas.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("spec", help="automaton spec file")
        p.add_argument("--horizon", type=_rational, help="override [options] horizon")
        p.set_defaults(func=func)
        return p

    p = command("simulate", cmd_simulate, "solve the automaton and write a CSV trace")
    p.add_argument("--out", help="trace file (default: stdout, summary goes to stderr)")
    p.add_argument("--require-settled", action="store_true",
                   help="exit 3 if the trajectory has not settled by the horizon")
    p.add_argument("--verify", action="store_true",
                   help="re-check the solution on the grid and report violations")

    p = command("eval", cmd_eval, "evaluate a quantifier-free formula on the trajectory")
    p.add_argument("--formula", required=True)
    p.add_argument("--at", type=_rational, default=Fraction(0))

    p = command("check", cmd_check, "evaluate an A/E formula over a family of delay choices")
    p.add_argument("--formula", required=True)
    p.add_argument("--delays", help='candidate delays, e.g. "x1=1/2,2;x2=1"')
    p.add_argument("--at", type=_rational, default=Fraction(0))

    command("events", cmd_events, "list the event lattice up to the horizon")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UnsettledTrajectory as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSETTLED
    except (EAAError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
