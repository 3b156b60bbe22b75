"""Asynchronous automata: the model, its exact solver and brute-force references.

Each state coordinate ``x_i`` is driven by its excitation
``e_i(t) = f_i(x(t), u(t))`` through either an ideal delay
(``x_i(t) = e_i(t - tau_i)``) or an inertial delay (``x_i`` adopts
``e_i`` once ``e_i`` has been constant on ``[t - tau_i, t)``). Before
``tau_i`` every coordinate sits at its initial value.

:func:`solve` is an event-calendar simulation that only visits instants
where something can change. :func:`dense_oracle` and
:func:`check_solution` recompute the same equations on a uniform grid,
sharing no code with the solver, and exist to cross-check it.
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_right
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence, Union

from .delay import DelayKind, check_delay
from .errors import ArityMismatch, BadInterval, GridMismatch, IndexOutOfRange, NegativeTime
from .signals import BooleanFunction, Signal, TimeLike, as_bit, as_time, combine, format_time

InputWave = tuple[Signal, ...]


@dataclass(frozen=True)
class Automaton:
    state_names: tuple[str, ...]
    input_names: tuple[str, ...]
    generator: tuple[BooleanFunction, ...]
    delays: tuple[Fraction, ...]
    initial: tuple[int, ...]
    kinds: tuple[DelayKind, ...]

    def __post_init__(self):
        object.__setattr__(self, "state_names", tuple(self.state_names))
        object.__setattr__(self, "input_names", tuple(self.input_names))
        object.__setattr__(self, "generator", tuple(self.generator))
        object.__setattr__(self, "delays", tuple(check_delay(d) for d in self.delays))
        object.__setattr__(self, "initial", tuple(as_bit(b) for b in self.initial))
        object.__setattr__(self, "kinds", tuple(DelayKind(k) for k in self.kinds))
        n = len(self.state_names)
        if n < 1:
            raise ValueError("an automaton needs at least one state coordinate")
        names = self.state_names + self.input_names
        if len(set(names)) != len(names):
            raise ValueError(f"state and input names must be distinct: {names}")
        for field in ("generator", "delays", "initial", "kinds"):
            if len(getattr(self, field)) != n:
                raise ArityMismatch(f"{field} has {len(getattr(self, field))} entries for {n} coordinates")
        for name, f in zip(self.state_names, self.generator):
            if f.variables != names:
                raise ArityMismatch(
                    f"generator of {name} must range over {names}, got {f.variables}")

    @classmethod
    def from_expressions(cls, state_names: Sequence[str], input_names: Sequence[str],
                         expressions: Sequence[str], delays: Sequence[TimeLike],
                         initial: Sequence[int], kinds: Sequence[DelayKind | str] | None = None,
                         n_ideal: int | None = None) -> Automaton:
        """Build an automaton from textual generator expressions.

        Either ``kinds`` is given per coordinate, or ``n_ideal`` makes the
        first ``n_ideal`` coordinates ideal and the rest inertial.
        """
        names = tuple(state_names) + tuple(input_names)
        if kinds is None:
            k = 0 if n_ideal is None else n_ideal
            if not 0 <= k <= len(state_names):
                raise ValueError(f"n_ideal={k} outside [0, {len(state_names)}]")
            kinds = [DelayKind.IDEAL] * k + [DelayKind.INERTIAL] * (len(state_names) - k)
        return cls(tuple(state_names), tuple(input_names),
                   tuple(BooleanFunction.parse(e, names) for e in expressions),
                   tuple(as_time(d) for d in delays), tuple(initial), tuple(kinds))

    @property
    def n(self) -> int:
        return len(self.state_names)

    @property
    def m(self) -> int:
        return len(self.input_names)

    @property
    def n_ideal(self) -> int:
        return sum(k is DelayKind.IDEAL for k in self.kinds)

    def with_delays(self, delays: Sequence[TimeLike]) -> Automaton:
        return replace(self, delays=tuple(as_time(d) for d in delays))

    def coordinate(self, i: int | str) -> int:
        """0-based position of a coordinate given by name or by 1-based index."""
        if isinstance(i, str):
            if i not in self.state_names:
                raise IndexOutOfRange(f"no coordinate named {i!r}")
            return self.state_names.index(i)
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"coordinate index {i} outside 1..{self.n}")
        return i - 1


@dataclass(frozen=True)
class Trajectory:
    horizon: Fraction
    states: tuple[Signal, ...]
    inputs: InputWave
    settled: bool
    state_names: tuple[str, ...]
    input_names: tuple[str, ...] = ()

    @property
    def signals(self) -> dict[str, Signal]:
        return dict(zip(self.state_names + self.input_names, self.states + self.inputs))

    def state_at(self, t: TimeLike) -> tuple[int, ...]:
        return tuple(s.value_at(t) for s in self.states)


def _check_inputs(a: Automaton, inputs: Sequence[Signal]) -> InputWave:
    inputs = tuple(inputs)
    if len(inputs) != a.m:
        raise ArityMismatch(f"automaton has {a.m} inputs, got {len(inputs)} signals")
    return inputs


def _check_horizon(horizon: TimeLike) -> Fraction:
    horizon = as_time(horizon)
    if horizon < 0:
        raise NegativeTime(f"horizon {format_time(horizon)} is negative")
    return horizon


def input_switches(inputs: Sequence[Signal]) -> list[Fraction]:
    """The input switch instants, starting with the implicit 0."""
    points = {Fraction(0)}
    for s in inputs:
        points.update(s.toggles)
    return sorted(points)


def event_lattice(inputs: Sequence[Signal], delays: Sequence[TimeLike],
                  horizon: TimeLike) -> list[Fraction]:
    """All instants ``nu_k + p_1 tau_1 + ... + p_n tau_n`` (p_i >= 0) inside ``[0, horizon]``."""
    steps = sorted({check_delay(d) for d in delays})
    horizon = _check_horizon(horizon)
    seen = {nu for nu in input_switches(inputs) if nu <= horizon}
    frontier = list(seen)
    while frontier:
        t = frontier.pop()
        for d in steps:
            s = t + d
            if s > horizon:
                break
            if s not in seen:
                seen.add(s)
                frontier.append(s)
    return sorted(seen)


def solve(a: Automaton, inputs: Sequence[Signal], horizon: TimeLike) -> Trajectory:
    """The unique trajectory of ``a`` under ``inputs`` on ``[0, horizon]``.

    Coordinates due at the same instant are updated together from the
    history strictly before that instant.
    """
    inputs = _check_inputs(a, inputs)
    horizon = _check_horizon(horizon)
    n = a.n
    ideal = [k is DelayKind.IDEAL for k in a.kinds]
    x = list(a.initial)
    x_toggles: list[list[Fraction]] = [[] for _ in range(n)]
    # excitation history: switch instants and current value (0 before the origin)
    e_switches: list[list[Fraction]] = [[] for _ in range(n)]
    e_now = [0] * n

    calendar: list[tuple[Fraction, int]] = []
    queued: set[tuple[Fraction, int]] = set()

    def schedule(t: Fraction, i: int) -> None:
        if t <= horizon and (t, i) not in queued:
            queued.add((t, i))
            heapq.heappush(calendar, (t, i))

    def excitation_at(i: int, t: Fraction) -> int:
        return bisect_right(e_switches[i], t) & 1

    def refresh(t: Fraction) -> None:
        bits = tuple(x) + tuple(s.value_at(t) for s in inputs)
        for i, f in enumerate(a.generator):
            v = f(*bits)
            if v != e_now[i]:
                e_now[i] = v
                e_switches[i].append(t)
                schedule(t + a.delays[i], i)

    for i, tau in enumerate(a.delays):
        schedule(tau, i)
    for nu in input_switches(inputs)[1:]:
        schedule(nu, -1)  # inputs only change the excitations
    refresh(Fraction(0))

    while calendar:
        t = calendar[0][0]
        due = []
        while calendar and calendar[0][0] == t:
            due.append(heapq.heappop(calendar)[1])
        changed = []
        for i in due:
            if i < 0:
                continue
            start = t - a.delays[i]
            if ideal[i]:
                v = excitation_at(i, start)
            elif bisect_right(e_switches[i], start) == len(e_switches[i]):
                # no excitation switch in (t - tau, t): the window is constant
                v = excitation_at(i, start)
            else:
                v = x[i]
            if v != x[i]:
                changed.append((i, v))
        for i, v in changed:
            x[i] = v
            x_toggles[i].append(t)
        refresh(t)

    states = tuple(Signal(x0, tuple(ts)) for x0, ts in zip(a.initial, x_toggles))
    return _trajectory(a, inputs, horizon, states)


def _trajectory(a: Automaton, inputs: InputWave, horizon: Fraction,
                states: tuple[Signal, ...]) -> Trajectory:
    traj = Trajectory(horizon, states, inputs, False, a.state_names, a.input_names)
    return replace(traj, settled=is_settled(a, traj))


def is_settled(a: Automaton, x: Trajectory) -> bool:
    """Whether ``x`` provably stays constant after its horizon.

    Requires every signal to have been quiet for at least the longest
    delay before the horizon, and every tail excitation to agree with the
    tail state (so no coordinate has a pending change).
    """
    last = max((s.toggles[-1] for s in x.states + x.inputs if s.toggles), default=Fraction(0))
    if x.horizon < last + max(a.delays):
        return False
    bits = tuple(s.tail_value for s in x.states) + tuple(s.tail_value for s in x.inputs)
    return all(f(*bits) == s.tail_value for f, s in zip(a.generator, x.states))


def excitation(a: Automaton, x: Trajectory, i: int | str) -> Signal:
    """``e_i = f_i(x, u)`` as a signal (meaningful up to the horizon)."""
    k = a.coordinate(i)
    return combine(a.generator[k], x.states + x.inputs)


def age_of_constancy(a: Automaton, x: Trajectory, i: int | str, t: TimeLike) -> Fraction:
    """How long before ``t`` the excitation of coordinate ``i`` has been constant.

    The largest ``d <= t`` with ``e_i`` constant on ``(t - d, t)``.
    ``i`` is a coordinate name or a 1-based index.
    """
    t = as_time(t)
    if not 0 <= t <= x.horizon:
        raise BadInterval(f"t={format_time(t)} outside [0, {format_time(x.horizon)}]")
    e = excitation(a, x, i)
    inside = [z for z in e.toggles if 0 < z < t]
    return t - inside[-1] if inside else t


# -- grid references ---------------------------------------------------------

def default_step(a: Automaton, inputs: Sequence[Signal], horizon: TimeLike) -> Fraction:
    """Half the coarsest grid on which every delay, input toggle and the horizon fall."""
    dens = [d.denominator for d in a.delays]
    dens += [z.denominator for s in inputs for z in s.toggles]
    dens.append(as_time(horizon).denominator)
    return Fraction(1, 2 * math.lcm(*dens))


def _grid_index(t: Fraction, step: Fraction, what: str) -> int:
    q = t / step
    if q.denominator != 1:
        raise GridMismatch(f"step {format_time(step)} does not divide {what} {format_time(t)}")
    return q.numerator


def _grid_setup(a: Automaton, inputs: Sequence[Signal], horizon: TimeLike,
                step: TimeLike | None) -> tuple[InputWave, Fraction, Fraction, int, list[int]]:
    inputs = _check_inputs(a, inputs)
    horizon = _check_horizon(horizon)
    step = default_step(a, inputs, horizon) if step is None else as_time(step)
    if step <= 0:
        raise GridMismatch("grid step must be positive")
    lags = [_grid_index(d, step, "delay") for d in a.delays]
    for s in inputs:
        for z in s.toggles:
            _grid_index(z, step, "input toggle")
    size = _grid_index(horizon, step, "horizon") + 1
    return inputs, horizon, step, size, lags


def _samples_to_signal(samples: Sequence[int], step: Fraction) -> Signal:
    toggles = [k * step for k in range(1, len(samples)) if samples[k] != samples[k - 1]]
    return Signal(samples[0], tuple(toggles))


def dense_oracle(a: Automaton, inputs: Sequence[Signal], horizon: TimeLike,
                 step: TimeLike | None = None) -> Trajectory:
    """Brute-force grid recursion of the automaton equations.

    Every delay, input toggle and the horizon must be multiples of
    ``step``; then all signals are constant on grid cells and the window
    tests reduce to comparing grid samples.
    """
    inputs, horizon, step, size, lags = _grid_setup(a, inputs, horizon, step)
    n = a.n
    u = [tuple(s.value_at(k * step) for s in inputs) for k in range(size)]
    x: list[tuple[int, ...]] = []
    e: list[tuple[int, ...]] = []
    for k in range(size):
        row = []
        for i in range(n):
            d = lags[i]
            if k < d:
                row.append(a.initial[i])
            elif a.kinds[i] is DelayKind.IDEAL:
                row.append(e[k - d][i])
            else:
                window = {e[j][i] for j in range(k - d, k)}
                row.append(window.pop() if len(window) == 1 else x[k - 1][i])
        x.append(tuple(row))
        bits = x[k] + u[k]
        e.append(tuple(f(*bits) for f in a.generator))
    states = tuple(_samples_to_signal([row[i] for row in x], step) for i in range(n))
    return _trajectory(a, inputs, horizon, states)


def check_solution(a: Automaton, inputs: Sequence[Signal], x: Trajectory,
                   step: TimeLike | None = None) -> list[Fraction]:
    """Grid instants where ``x`` violates the automaton equations; empty means OK."""
    inputs, horizon, step, size, lags = _grid_setup(a, inputs, x.horizon, step)
    if len(x.states) != a.n:
        raise ArityMismatch(f"trajectory has {len(x.states)} states, automaton {a.n}")
    for s in x.states:
        for z in s.toggles:
            _grid_index(z, step, "state toggle")
    xs = [x.state_at(k * step) for k in range(size)]
    us = [tuple(s.value_at(k * step) for s in inputs) for k in range(size)]
    es = [tuple(f(*(xs[k] + us[k])) for f in a.generator) for k in range(size)]
    violations = []
    for k in range(size):
        for i in range(a.n):
            d = lags[i]
            if k < d:
                expected = a.initial[i]
            elif a.kinds[i] is DelayKind.IDEAL:
                expected = es[k - d][i]
            else:
                window = {es[j][i] for j in range(k - d, k)}
                # the window rule fires exactly when the excitation held still
                expected = window.pop() if len(window) == 1 else xs[k - 1][i]
            if xs[k][i] != expected:
                violations.append(k * step)
                break
    return violations
