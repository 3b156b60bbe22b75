"""Exact time, realizable Boolean signals and their pointwise algebra.

A realizable signal is 0 for negative time and, from time 0 on, a
piecewise-constant function that switches at a strictly increasing,
finite list of instants. Pieces are half-open, ``[z_k, z_{k+1})``, so
every signal is right-continuous.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence, Union

from .errors import ArityMismatch, BadInterval, NegativeTime, NonMonotonicToggles
from .formula import Formula, compile_boolean, evaluate, variables
from .parser import parse_boolean

Time = Fraction
TimeLike = Union[Fraction, int, str]
Side = Literal["left", "right"]

INFINITE = math.inf


def as_time(value: TimeLike) -> Fraction:
    """Coerce ints, Fractions and ``p`` / ``p/q`` strings to an exact time.

    Floats are refused: they would silently smuggle rounding into the
    event arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"times must be exact (int, Fraction or 'p/q'), got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_time(value)
    raise TypeError(f"cannot interpret {value!r} as a time")


def parse_time(text: str) -> Fraction:
    """Parse the rational literal syntax ``p`` or ``p/q`` (q > 0, optional leading '-')."""
    s = text.strip()
    num, sep, den = s.partition("/")
    if not _is_int_literal(num, signed=True) or (sep and not _is_int_literal(den, signed=False)):
        raise ValueError(f"malformed rational {text!r}")
    if sep and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if sep else 1)


def _is_int_literal(s: str, signed: bool) -> bool:
    if signed and s.startswith("-"):
        s = s[1:]
    return s.isdigit() and s.isascii()


def format_time(t: Fraction) -> str:
    return str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"


def as_bit(value) -> int:
    if value in (0, 1) and not isinstance(value, float):
        return int(value)
    raise ValueError(f"bit must be 0 or 1, got {value!r}")


@dataclass(frozen=True)
class Signal:
    """Canonical realizable signal: ``initial`` on ``[0, toggles[0])``, flipping at each toggle.

    A toggle at 0 is absorbed into ``initial``, so two signals are equal
    exactly when they are equal as functions of time.
    """

    initial: int
    toggles: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "initial", as_bit(self.initial))
        toggles = tuple(as_time(t) for t in self.toggles)
        for t in toggles:
            if t < 0:
                raise NegativeTime(f"toggle {format_time(t)} is negative")
        for a, b in zip(toggles, toggles[1:]):
            if b <= a:
                raise NonMonotonicToggles(
                    f"toggles must be strictly increasing: {format_time(a)} then {format_time(b)}")
        initial = self.initial
        if toggles and toggles[0] == 0:
            initial ^= 1
            toggles = toggles[1:]
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "toggles", toggles)

    @classmethod
    def constant(cls, bit: int) -> Signal:
        return cls(bit)

    @classmethod
    def pulse(cls, start: TimeLike, end: TimeLike) -> Signal:
        """1 exactly on ``[start, end)``."""
        return cls(0, (start, end))

    @classmethod
    def step(cls, at: TimeLike) -> Signal:
        """0 before ``at``, 1 from ``at`` on."""
        return cls(0, (at,))

    def value_at(self, t: TimeLike) -> int:
        t = as_time(t)
        if t < 0:
            return 0
        return self.initial ^ (bisect_right(self.toggles, t) & 1)

    def __call__(self, t: TimeLike) -> int:
        return self.value_at(t)

    def limit(self, t: TimeLike, side: Side) -> int:
        t = as_time(t)
        if side == "right":
            return self.value_at(t)
        if side != "left":
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        if t <= 0:
            return 0
        return self.initial ^ (bisect_left(self.toggles, t) & 1)

    def derivative(self, t: TimeLike, side: Side) -> int:
        t = as_time(t)
        if side == "left":
            return self.limit(t, "left") ^ self.value_at(t)
        return self.value_at(t) ^ self.limit(t, "right")

    @property
    def switches(self) -> tuple[Fraction, ...]:
        """Every instant where the value changes, including 0 when ``initial`` is 1."""
        return (Fraction(0),) + self.toggles if self.initial else self.toggles

    @property
    def tail_value(self) -> int:
        return self.initial ^ (len(self.toggles) & 1)

    @property
    def last_toggle(self) -> Fraction | None:
        return self.toggles[-1] if self.toggles else None

    def shift(self, tau: TimeLike) -> Signal:
        """``t -> s(t - tau)``; the result is 0 on ``[0, tau)``."""
        tau = as_time(tau)
        if tau < 0:
            raise NegativeTime(f"shift amount {format_time(tau)} is negative")
        if tau == 0:
            return self
        return Signal(0, tuple(z + tau for z in self.switches))

    def toggles_in(self, a: TimeLike, b: TimeLike) -> list[Fraction]:
        """Toggles inside the half-open window ``[a, b)``."""
        a, b = as_time(a), as_time(b)
        if a > b:
            raise BadInterval(f"empty window [{format_time(a)}, {format_time(b)})")
        return list(self.toggles[bisect_left(self.toggles, a):bisect_left(self.toggles, b)])

    def constant_on(self, a: TimeLike, b: TimeLike) -> int | None:
        """The value of the signal on ``[a, b)`` if it is constant there, else None."""
        a, b = as_time(a), as_time(b)
        if a >= b:
            raise BadInterval(f"window [{format_time(a)}, {format_time(b)}) is empty")
        sw = self.switches
        if bisect_right(sw, a) != bisect_left(sw, b):
            return None
        return self.value_at(a)

    def min_pulse_width(self) -> Fraction | float:
        """Shortest stretch between consecutive switches; ``math.inf`` if there is none.

        The leading segment ``[0, first toggle)`` counts only when it carries
        a 1, since a 0 there is indistinguishable from the pre-origin zero.
        """
        sw = self.switches
        gaps = [b - a for a, b in zip(sw, sw[1:])]
        return min(gaps) if gaps else INFINITE

    def __repr__(self) -> str:
        ts = ", ".join(format_time(t) for t in self.toggles)
        return f"Signal({self.initial}, [{ts}])"


def make_signal(initial: int, toggles: Iterable[TimeLike] = ()) -> Signal:
    return Signal(initial, tuple(toggles))


def breakpoints(signals: Iterable[Signal]) -> list[Fraction]:
    """Sorted union of the switch instants of ``signals``, always including 0."""
    points = {Fraction(0)}
    for s in signals:
        points.update(s.toggles)
    return sorted(points)


@dataclass(frozen=True)
class BooleanFunction:
    """A Boolean function over an ordered tuple of named variables."""

    variables: tuple[str, ...]
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        unknown = variables(self.body) - set(self.variables)
        if unknown:
            raise ValueError(f"undeclared variables {sorted(unknown)} in {self.body}")
        object.__setattr__(self, "_fn", compile_boolean(self.body, self.variables))

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> BooleanFunction:
        return cls(tuple(names), parse_boolean(text, names))

    @property
    def arity(self) -> int:
        return len(self.variables)

    def __call__(self, *bits: int) -> int:
        if len(bits) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(bits)}")
        return self._fn(bits)

    def evaluate(self, env) -> int:
        return evaluate(self.body, env)

    def __str__(self) -> str:
        return str(self.body)


def combine(f: BooleanFunction, args: Sequence[Signal]) -> Signal:
    """Apply ``f`` pointwise on ``[0, inf)``; the result is 0 before the origin."""
    if len(args) != f.arity:
        raise ArityMismatch(f"{f.arity}-ary function applied to {len(args)} signals")
    initial = f(*(s.value_at(0) for s in args))
    toggles = []
    current = initial
    for t in breakpoints(args)[1:]:
        v = f(*(s.value_at(t) for s in args))
        if v != current:
            toggles.append(t)
            current = v
    return Signal(initial, tuple(toggles))
