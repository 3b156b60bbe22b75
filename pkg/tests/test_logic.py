import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from eaa import (
    Automaton, EvalContext, Signal, always_holds, event_lattice, eventually_holds, holds_at,
    next_holds, parse_formula, satisfied_in, solve, truth_signal, until_holds,
)
from eaa.errors import (
    BadInterval, QuantifierPresent, UnknownIdentifier, UnsettledTrajectory, UnsupportedConnector,
)
from eaa.formula import (
    TRUE, Always, And, Const, Eventually, Formula, Implies, NextLeft, NextRight, Not, Or, Until,
    Var, Xor, contains,
)

from generators import random_automaton, random_formula, random_inputs, seeds


def follower(*signals: Signal, horizon=20) -> EvalContext:
    """A trajectory whose states x1.. are exactly the given signals.

    Each state is an ideal unit buffer of an input running one time unit ahead,
    so every signal must be 0 on [0, 1).
    """
    n = len(signals)
    states = [f"x{i + 1}" for i in range(n)]
    inputs = [f"u{i + 1}" for i in range(n)]
    a = Automaton.from_expressions(states, inputs, inputs, [1] * n, [0] * n, n_ideal=n)
    ahead = [Signal(0, tuple(z - 1 for z in s.toggles)) for s in signals]
    traj = solve(a, ahead, horizon)
    assert traj.states == signals
    return EvalContext(traj)


# -- independent reference: the definitions, evaluated point by point ------------

def naive(f: Formula, traj, t: F) -> int:
    sig = traj.signals
    points = sorted({F(0)} | {z for s in sig.values() for z in s.toggles})
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return sig[f.name].value_at(t)
    if isinstance(f, Not):
        return 1 - naive(f.operand, traj, t)
    if isinstance(f, (And, Or, Xor, Implies)):
        a, b = naive(f.left, traj, t), naive(f.right, traj, t)
        return {And: a & b, Or: a | b, Xor: a ^ b, Implies: (1 - a) | b}[type(f)]
    if isinstance(f, NextLeft):
        before = [p for p in points if p < t]
        return naive(f.operand, traj, (before[-1] + t) / 2 if before else t - 1)
    if isinstance(f, NextRight):
        after = [p for p in points if p > t]
        return naive(f.operand, traj, (after[0] + t) / 2 if after else t + 1)
    if isinstance(f, Eventually):
        return naive(Until(TRUE, f.operand), traj, t)
    if isinstance(f, Always):
        return 1 - naive(Until(TRUE, Not(f.operand)), traj, t)
    if isinstance(f, Until):
        later = [p for p in points if p > t]
        seq = [t] + later
        candidates = seq + [(p + q) / 2 for p, q in zip(seq, seq[1:])] + [seq[-1] + 1]
        for w in sorted(candidates):
            if not naive(f.right, traj, w):
                continue
            # h must hold on [t, w): at t, at every breakpoint inside, and between them
            inside = [t] + [p for p in later if p < w]
            probes = inside + [(p + q) / 2 for p, q in zip(inside, inside[1:] + [w])]
            if all(naive(f.left, traj, s) for s in probes if s < w):
                return 1
        return 0
    raise TypeError(f)


class TestExamples:
    def test_atom(self):
        ctx = follower(Signal.pulse(1, 2))
        assert holds_at("x1", ctx, F(3, 2)) == 1

    def test_next_left_at_switch(self):
        ctx = follower(Signal.pulse(1, 2))
        assert holds_at(NextLeft(Var("x1")), ctx, 1) == 0
        assert next_holds("x1", ctx, 1, "left") == 0
        assert next_holds("x1", ctx, 1, "right") == 1 == holds_at("x1", ctx, 1)
        assert next_holds("x1", ctx, F(3, 2), "left") == 1

    def test_next_left_at_origin_reads_zero_state(self):
        ctx = follower(Signal(0, (1,)))
        assert next_holds("!x1", ctx, 0, "left") == 1

    def test_always_after_step(self):
        ctx = follower(Signal.step(2))
        assert holds_at("G x1", ctx, 2) == 1
        assert holds_at("G x1", ctx, 1) == 0

    def test_until(self):
        ctx = follower(Signal.step(3), Signal.pulse(1, 2))  # x1 = g, x2 = h
        assert until_holds(TRUE, "x1", ctx, 0) == 1
        assert until_holds("x2", "x1", ctx, 0) == 0
        assert until_holds("x2", "x1", ctx, 3) == 1  # g at t itself: empty window
        assert until_holds("0", "x1", ctx, 3) == 1

    def test_eventually(self):
        ctx = follower(Signal.step(3), Signal.pulse(1, 2))
        assert eventually_holds("x1", ctx, 0) == 1
        assert eventually_holds("0", ctx, 0) == 0
        assert eventually_holds("x2", ctx, 5) == 0

    def test_always(self):
        ctx = follower(Signal(0, (1, 5)))
        assert always_holds("1", ctx, 3) == 1
        assert always_holds("x1 | !x1", ctx, 0) == 1
        assert always_holds("x1", ctx, 1) == 0

    def test_anchored(self):
        a = Automaton.from_expressions(["x1"], [], ["x1"], [1], [1])
        ctx = EvalContext(solve(a, (), 3))
        assert satisfied_in("x1", ctx) == 1
        assert satisfied_in("x1 | !x1", ctx) == 1
        assert satisfied_in("x1 & !x1", ctx) == 0

    def test_truth_signal(self):
        ctx = follower(Signal.pulse(1, 2), Signal.pulse(3, 4), Signal.step(2))
        assert truth_signal("x1", ctx) == Signal.pulse(1, 2)
        assert truth_signal("F x2", ctx) == Signal(1, (4,))
        assert truth_signal("G x3", ctx) == Signal.step(2)

    def test_until_witness_inside_interval(self):
        # g = X- x1 is false at 1 but true on (1, 2]: the only witnesses lie
        # strictly after t, with no breakpoint to land on
        ctx = follower(Signal.pulse(1, 2), Signal.pulse(1, 3))
        assert holds_at("X- x1", ctx, 1) == 0
        assert holds_at("x2 U (X- x1)", ctx, 1) == 1
        assert holds_at("!x1 U (X- x1)", ctx, 1) == 0  # h fails at t itself
        assert holds_at("(X- x1) U (X- x1)", ctx, F(3, 2)) == 1


class TestErrors:
    def test_unsettled(self):
        ring = Automaton.from_expressions(["x1"], [], ["!x1"], [1], [0])
        traj = solve(ring, (), 5)
        assert holds_at("x1", traj, 3) == 1
        for text in ["F x1", "G x1", "x1 U x1", "!(1 -> F x1)"]:
            with pytest.raises(UnsettledTrajectory):
                holds_at(text, traj, 0)
        with pytest.raises(BadInterval):
            holds_at("x1", traj, 6)

    def test_quantifier(self):
        with pytest.raises(QuantifierPresent):
            holds_at("A F x1", follower(Signal.pulse(1, 2)), 0)

    def test_truth_signal_rejects_next(self):
        with pytest.raises(UnsupportedConnector):
            truth_signal("X- x1", follower(Signal.pulse(1, 2)))

    def test_unknown_name(self):
        with pytest.raises(UnknownIdentifier):
            holds_at("y", follower(Signal.pulse(1, 2)), 0)
        with pytest.raises(UnknownIdentifier):
            holds_at(Var("y"), follower(Signal.pulse(1, 2)), 0)


def _random_case(seed: int, next_ops: bool = True):
    rng = random.Random(seed)
    while True:
        a = random_automaton(rng)
        u = random_inputs(rng, a.m)
        traj = solve(a, u, 12)
        if traj.settled:
            break
    names = list(a.state_names + a.input_names)
    points = sorted({F(0)} | {z for s in traj.states + traj.inputs for z in s.toggles})
    probes = points + [(p + q) / 2 for p, q in zip(points, points[1:])] + [points[-1] + 1]
    return rng, a, u, traj, names, probes


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_matches_pointwise_reference(seed):
    rng, a, u, traj, names, probes = _random_case(seed)
    f = random_formula(rng, names, depth=3)
    ctx = EvalContext(traj)
    for t in rng.sample(probes, min(6, len(probes))):
        assert holds_at(f, ctx, t) == naive(f, traj, t), (str(f), t)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_laws(seed):
    rng, a, u, traj, names, probes = _random_case(seed)
    h = random_formula(rng, names, depth=3)
    g = random_formula(rng, names, depth=3)
    ctx = EvalContext(traj)
    for t in probes:
        assert always_holds(h, ctx, t) == 1 - eventually_holds(Not(h), ctx, t)
        assert eventually_holds(g, ctx, t) == until_holds(TRUE, g, ctx, t)
        if not contains(h, NextLeft):
            # without X- the truth value is right-continuous, so X+ changes nothing
            assert next_holds(h, ctx, t, "right") == holds_at(h, ctx, t)
        if holds_at(g, ctx, t):
            assert until_holds(h, g, ctx, t) == 1
    assert satisfied_in(h, ctx) == holds_at(h, ctx, 0)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_finite_variability(seed):
    rng, a, u, traj, names, probes = _random_case(seed)
    h = random_formula(rng, names, depth=3, next_ops=False)
    ctx = EvalContext(traj)
    s = truth_signal(h, ctx)
    assert Signal(s.initial, s.toggles) == s
    assert set(s.toggles) <= set(event_lattice(u, a.delays, traj.horizon))
    for t in probes:
        assert s.value_at(t) == holds_at(h, ctx, t)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_until_monotone_in_left_operand(seed):
    rng, a, u, traj, names, probes = _random_case(seed)
    h = random_formula(rng, names, depth=2, next_ops=False)
    g = random_formula(rng, names, depth=2, next_ops=False)
    weaker = Or(h, random_formula(rng, names, depth=2, next_ops=False))
    ctx = EvalContext(traj)
    for t in probes:
        if until_holds(h, g, ctx, t):
            assert until_holds(weaker, g, ctx, t) == 1


def test_formula_strings_and_trees_agree():
    ctx = follower(Signal.pulse(1, 2), Signal.step(3))
    f = parse_formula("x1 U x2")
    assert holds_at(f, ctx, 0) == holds_at("x1 U x2", ctx, 0) == 0
    assert holds_at("!x1 U x2", ctx, 2) == 1
