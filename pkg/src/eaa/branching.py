"""Families of trajectories over delay choices, and the A/E path quantifiers.

The real set of paths ranges over every admissible delay; here it is
sampled by a finite :class:`DelaySpace`, so a verdict of ``A`` is only
as strong as the candidates supplied.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping, Sequence

from .automaton import Automaton, InputWave, Trajectory, solve
from .delay import check_delay
from .errors import (
    ArityMismatch, BadInterval, EmptyDelaySpace, NegativeTime, UnknownIdentifier,
    UnquantifiedOverManyPaths,
)
from .formula import Formula, is_closed
from .logic import FormulaLike, PieceEvaluator, holds_at
from .parser import parse_formula
from .signals import Signal, TimeLike, as_time, format_time


@dataclass(frozen=True)
class DelaySpace:
    """Finite candidate delays, one nonempty list per coordinate."""

    candidates: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        cands = []
        for i, options in enumerate(self.candidates):
            options = tuple(check_delay(d) for d in options)
            if not options:
                raise EmptyDelaySpace(f"coordinate {i + 1} has no candidate delays")
            cands.append(options)
        if not cands:
            raise EmptyDelaySpace("delay space has no coordinates")
        object.__setattr__(self, "candidates", tuple(cands))

    @classmethod
    def from_bounds(cls, bounds: Sequence[tuple[TimeLike, TimeLike]], step: TimeLike) -> DelaySpace:
        """Grid ``lo, lo + step, ...`` up to ``hi`` (inclusive when it lands on the grid) per coordinate."""
        step = check_delay(step)
        cands = []
        for lo, hi in bounds:
            lo, hi = check_delay(lo), as_time(hi)
            if hi < lo:
                raise ValueError(f"lower bound {format_time(lo)} exceeds upper bound {format_time(hi)}")
            grid = []
            d = lo
            while d <= hi:
                grid.append(d)
                d += step
            cands.append(tuple(grid))
        return cls(tuple(cands))

    @classmethod
    def around(cls, a: Automaton, choices: Mapping[str, Sequence[TimeLike]]) -> DelaySpace:
        """Candidates for the named coordinates; the others keep the automaton's delay."""
        unknown = set(choices) - set(a.state_names)
        if unknown:
            raise UnknownIdentifier(f"no coordinate named {sorted(unknown)[0]!r}")
        return cls(tuple(tuple(choices.get(name, (tau,)))
                         for name, tau in zip(a.state_names, a.delays)))

    def tuples(self) -> list[tuple[Fraction, ...]]:
        return list(itertools.product(*self.candidates))

    def __len__(self) -> int:
        size = 1
        for c in self.candidates:
            size *= len(c)
        return size


@dataclass(frozen=True)
class PathSet:
    template: Automaton
    inputs: InputWave
    horizon: Fraction
    delay_tuples: tuple[tuple[Fraction, ...], ...]
    paths: tuple[Trajectory, ...]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)


def enumerate_paths(template: Automaton, space: DelaySpace, inputs: Sequence[Signal],
                    horizon: TimeLike) -> PathSet:
    """Solve ``template`` once per delay tuple, in lexicographic tuple order.

    The delays stored in ``template`` are ignored.
    """
    if len(space.candidates) != template.n:
        raise ArityMismatch(
            f"delay space covers {len(space.candidates)} coordinates, automaton has {template.n}")
    inputs = tuple(inputs)
    horizon = as_time(horizon)
    tuples = tuple(space.tuples())
    paths = tuple(solve(template.with_delays(d), inputs, horizon) for d in tuples)
    return PathSet(template, inputs, horizon, tuples, paths)


def _parse(h: FormulaLike, paths: PathSet) -> Formula:
    if isinstance(h, str):
        return parse_formula(h, paths.template.state_names + paths.template.input_names)
    return h


def _check(paths: PathSet, t: TimeLike) -> Fraction:
    if len(paths) == 0:
        raise EmptyDelaySpace("empty path set")
    t = as_time(t)
    if t < 0:
        raise NegativeTime(f"evaluation time {format_time(t)} is negative")
    return t


def quantifier_holds(q: Literal["A", "E"], h: FormulaLike, paths: PathSet, t: TimeLike) -> int:
    """``A``: minimum of ``h``'s truth over all paths; ``E``: the maximum."""
    t = _check(paths, t)
    h = _parse(h, paths)
    values = [holds_at(h, p, t) for p in paths]
    if q == "A":
        return min(values)
    if q == "E":
        return max(values)
    raise ValueError(f"quantifier must be 'A' or 'E', got {q!r}")


def eval_formula(h: FormulaLike, paths: PathSet, t: TimeLike) -> int:
    """Evaluate a formula that may nest A/E anywhere.

    Every quantifier ranges over the whole fixed path set. Outside any
    quantifier the formula must not mention state or input names unless
    the set holds a single path.
    """
    t = _check(paths, t)
    h = _parse(h, paths)
    if len(paths) > 1 and not is_closed(h):
        raise UnquantifiedOverManyPaths(
            f"{h} refers to the state outside A/E but {len(paths)} paths are in scope")
    ev = PieceEvaluator(paths.paths, allow_quantifiers=True)
    for p in paths:
        if not p.settled and t > p.horizon:
            raise BadInterval(f"t={format_time(t)} lies beyond the horizon of an unsettled path")
    return int(ev.truth(h)[0, ev.piece(t)])

