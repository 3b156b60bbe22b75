"""Continuous-time temporal formulas evaluated over solved trajectories.

Every signal of a trajectory is constant between consecutive
breakpoints, and so is the truth value of every formula built from
them. Time is therefore cut into *pieces*, alternating open intervals
and breakpoints::

    (-inf, 0)  {0}  (0, b1)  {b1}  (b1, b2)  ...  {bk}  (bk, inf)

and a formula is evaluated once per piece. The unbounded connectors
(U, F, G) read the final piece as the eternal future, which is only
sound on settled trajectories.

Truth tables are numpy arrays of shape ``(paths, pieces)`` so that the
same machinery serves the path quantifiers of :mod:`eaa.branching`.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence, Union

import numpy as np

from .automaton import Trajectory
from .errors import (
    BadInterval, NegativeTime, QuantifierPresent, UnknownIdentifier, UnsettledTrajectory,
    UnsupportedConnector,
)
from .formula import (
    TRUE, AllPaths, Always, And, Const, Eventually, Formula, Implies, NextLeft, NextRight, Not,
    Or, QUANTIFIERS, SomePath, UNBOUNDED, Until, Var, Xor, contains,
)
from .parser import parse_formula
from .signals import Signal, TimeLike, as_time, format_time

FormulaLike = Union[Formula, str]


class PieceEvaluator:
    """Evaluates formulas piecewise over one or more trajectories sharing a time partition."""

    def __init__(self, paths: Sequence[Trajectory], allow_quantifiers: bool = False):
        if not paths:
            raise ValueError("need at least one trajectory")
        self.paths = tuple(paths)
        self.allow_quantifiers = allow_quantifiers
        points = {Fraction(0)}
        for p in self.paths:
            for s in p.states + p.inputs:
                points.update(s.toggles)
        self.points = sorted(points)
        reps = [Fraction(-1)]
        for j, b in enumerate(self.points):
            reps.append(b)
            nxt = self.points[j + 1] if j + 1 < len(self.points) else b + 2
            reps.append((b + nxt) / 2)
        self.reps = reps
        self.is_point = np.array([k % 2 == 1 for k in range(len(reps))])
        self.settled = all(p.settled for p in self.paths)
        self._cache: dict[Formula, np.ndarray] = {}

    def piece(self, t: Fraction) -> int:
        if t < 0:
            return 0
        j = bisect_right(self.points, t) - 1
        return 2 * j + 1 if self.points[j] == t else 2 * j + 2

    def truth(self, f: Formula) -> np.ndarray:
        hit = self._cache.get(f)
        if hit is None:
            hit = self._cache[f] = self._eval(f)
        return hit

    def _full(self, value: bool) -> np.ndarray:
        return np.full((len(self.paths), len(self.reps)), value, dtype=bool)

    def _eval(self, f: Formula) -> np.ndarray:
        if isinstance(f, Const):
            return self._full(bool(f.value))
        if isinstance(f, Var):
            rows = []
            for p in self.paths:
                s = p.signals.get(f.name)
                if s is None:
                    raise UnknownIdentifier(f"unknown identifier {f.name!r}")
                rows.append([s.value_at(t) for t in self.reps])
            return np.array(rows, dtype=bool)
        if isinstance(f, Not):
            return ~self.truth(f.operand)
        if isinstance(f, And):
            return self.truth(f.left) & self.truth(f.right)
        if isinstance(f, Or):
            return self.truth(f.left) | self.truth(f.right)
        if isinstance(f, Xor):
            return self.truth(f.left) ^ self.truth(f.right)
        if isinstance(f, Implies):
            return ~self.truth(f.left) | self.truth(f.right)
        if isinstance(f, NextLeft):
            v = self.truth(f.operand)
            out = v.copy()
            out[:, 1::2] = v[:, 0:-1:2]
            return out
        if isinstance(f, NextRight):
            v = self.truth(f.operand)
            out = v.copy()
            out[:, 1::2] = v[:, 2::2]
            return out
        if isinstance(f, UNBOUNDED):
            if not self.settled:
                raise UnsettledTrajectory(
                    f"{type(f).__name__} needs a settled trajectory; extend the horizon")
            if isinstance(f, Until):
                return self._until(self.truth(f.left), self.truth(f.right))
            if isinstance(f, Eventually):
                return self._until(self.truth(TRUE), self.truth(f.operand))
            return ~self._until(self.truth(TRUE), ~self.truth(f.operand))
        if isinstance(f, QUANTIFIERS):
            if not self.allow_quantifiers:
                raise QuantifierPresent(f"path quantifier in {f}; use eaa.branching")
            v = self.truth(f.operand)
            agg = v.all(axis=0) if isinstance(f, AllPaths) else v.any(axis=0)
            return np.broadcast_to(agg, v.shape).copy()
        raise TypeError(f"unknown formula node {f!r}")

    def _until(self, h: np.ndarray, g: np.ndarray) -> np.ndarray:
        # U(k) = g(k) or (h(k) and W(k+1)), where W is the truth of "a witness
        # lies ahead with h holding up to it", seen from the start of piece k+1.
        # Entering an open interval requires h on it; entering a point does not.
        out = np.zeros_like(g)
        ahead = np.zeros(g.shape[0], dtype=bool)
        for k in range(g.shape[1] - 1, -1, -1):
            out[:, k] = g[:, k] | (h[:, k] & ahead)
            ahead = out[:, k] if self.is_point[k] else h[:, k] & out[:, k]
        return out


@dataclass
class EvalContext:
    """A trajectory prepared for formula evaluation; caches subformula truth tables."""

    trajectory: Trajectory
    _evaluator: PieceEvaluator | None = field(default=None, repr=False, compare=False)

    @property
    def evaluator(self) -> PieceEvaluator:
        if self._evaluator is None:
            self._evaluator = PieceEvaluator([self.trajectory])
        return self._evaluator

    @property
    def names(self) -> tuple[str, ...]:
        return self.trajectory.state_names + self.trajectory.input_names


ContextLike = Union[EvalContext, Trajectory]


def _context(ctx: ContextLike) -> EvalContext:
    return ctx if isinstance(ctx, EvalContext) else EvalContext(ctx)


def _formula(h: FormulaLike, ctx: EvalContext) -> Formula:
    return parse_formula(h, ctx.names) if isinstance(h, str) else h


def _time(t: TimeLike, ctx: EvalContext) -> Fraction:
    t = as_time(t)
    if t < 0:
        raise NegativeTime(f"evaluation time {format_time(t)} is negative")
    traj = ctx.trajectory
    if not traj.settled and t > traj.horizon:
        raise BadInterval(
            f"t={format_time(t)} lies beyond the horizon {format_time(traj.horizon)} "
            "of an unsettled trajectory")
    return t


def holds_at(h: FormulaLike, ctx: ContextLike, t: TimeLike) -> int:
    """Floating semantics: the truth of ``h`` at time ``t``."""
    ctx = _context(ctx)
    h = _formula(h, ctx)
    t = _time(t, ctx)
    ev = ctx.evaluator
    return int(ev.truth(h)[0, ev.piece(t)])


def satisfied_in(h: FormulaLike, ctx: ContextLike) -> int:
    """Anchored semantics: the truth of ``h`` at the initial instant."""
    return holds_at(h, ctx, 0)


def next_holds(h: FormulaLike, ctx: ContextLike, t: TimeLike,
               side: Literal["left", "right"]) -> int:
    ctx = _context(ctx)
    h = _formula(h, ctx)
    if side == "left":
        return holds_at(NextLeft(h), ctx, t)
    if side == "right":
        return holds_at(NextRight(h), ctx, t)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def until_holds(h: FormulaLike, g: FormulaLike, ctx: ContextLike, t: TimeLike) -> int:
    ctx = _context(ctx)
    return holds_at(Until(_formula(h, ctx), _formula(g, ctx)), ctx, t)


def eventually_holds(g: FormulaLike, ctx: ContextLike, t: TimeLike) -> int:
    ctx = _context(ctx)
    return holds_at(Eventually(_formula(g, ctx)), ctx, t)


def always_holds(h: FormulaLike, ctx: ContextLike, t: TimeLike) -> int:
    ctx = _context(ctx)
    return holds_at(Always(_formula(h, ctx)), ctx, t)


def truth_signal(h: FormulaLike, ctx: ContextLike) -> Signal:
    """The realizable signal ``t -> holds_at(h, ctx, t)`` on ``[0, inf)``.

    Formulas with X- are excluded: the left limit of a right-continuous
    signal is left-continuous and so not realizable.
    """
    ctx = _context(ctx)
    h = _formula(h, ctx)
    if contains(h, (NextLeft, NextRight) + QUANTIFIERS):
        raise UnsupportedConnector(f"truth_signal needs an X-free, quantifier-free formula: {h}")
    ev = ctx.evaluator
    row = ev.truth(h)[0]
    toggles = []
    for j, b in enumerate(ev.points):
        at, before, after = row[2 * j + 1], row[2 * j], row[2 * j + 2]
        if at != after:
            raise AssertionError(f"truth of {h} is not right-continuous at {format_time(b)}")
        if j > 0 and at != before:
            toggles.append(b)
    return Signal(int(row[1]), tuple(toggles))
