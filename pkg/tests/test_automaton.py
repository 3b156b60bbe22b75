import dataclasses
import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from eaa import (
    Automaton, Signal, age_of_constancy, check_solution, dense_oracle, event_lattice, ideal_delay,
    is_settled, solve,
)
from eaa.automaton import default_step, excitation
from eaa.delay import DelayKind
from eaa.errors import ArityMismatch, BadInterval, GridMismatch, IndexOutOfRange, ZeroDelay

from generators import random_automaton, random_inputs, seeds

GLITCH = (Signal.pulse(2, F(5, 2)),)


def buffer(kind: str, tau=1) -> Automaton:
    return Automaton.from_expressions(["x1"], ["u1"], ["u1"], [tau], [0], kinds=[kind])


RING = Automaton.from_expressions(["x1"], [], ["!x1"], [1], [0], kinds=["inertial"])
CONST = Automaton.from_expressions(["x1"], ["u1"], ["0"], [1], [0], kinds=["inertial"])
LATCH = Automaton.from_expressions(["x1"], [], ["x1"], [F(3, 4)], [1], kinds=["inertial"])


class TestEventLattice:
    def test_single_delay(self):
        assert event_lattice([Signal(0, (2,))], [1], 4) == [0, 1, 2, 3, 4]

    def test_two_delays(self):
        # brute-force enumeration of 2a + 3b
        expected = sorted({2 * a + 3 * b for a in range(5) for b in range(5) if 2 * a + 3 * b <= 7})
        assert event_lattice([], [2, 3], 7) == expected == [0, 2, 3, 4, 5, 6, 7]

    def test_zero_horizon(self):
        assert event_lattice([], [1], 0) == [0]

    def test_rejects_zero_delay(self):
        with pytest.raises(ZeroDelay):
            event_lattice([], [0], 3)

    @given(seeds)
    def test_matches_enumeration(self, seed):
        rng = random.Random(seed)
        delays = [F(rng.randint(1, 8), 4) for _ in range(rng.randint(1, 3))]
        inputs = random_inputs(rng, 2, 6)
        horizon = F(rng.randint(0, 24), 4)
        nus = {F(0)} | {z for s in inputs for z in s.toggles}
        brute = set()
        for nu in nus:
            ranges = [range(int((horizon - nu) / d) + 1) if nu <= horizon else range(0) for d in delays]
            for ps in itertools.product(*ranges):
                t = nu + sum(p * d for p, d in zip(ps, delays))
                if t <= horizon:
                    brute.add(t)
        assert event_lattice(inputs, delays, horizon) == sorted(brute)


class TestSolveExamples:
    def test_inertial_buffer_filters_glitch(self):
        traj = solve(buffer("inertial"), GLITCH, 10)
        assert traj.states == (Signal(0),)
        assert traj.settled

    def test_ideal_buffer_passes_glitch(self):
        traj = solve(buffer("ideal"), GLITCH, 10)
        assert traj.states == (Signal.pulse(3, F(7, 2)),)
        assert traj.settled

    def test_ring_oscillator(self):
        traj = solve(RING, (), 5)
        assert traj.states == (Signal(0, (1, 2, 3, 4, 5)),)
        assert not traj.settled

    def test_examples_match_oracle(self):
        for a, u, h in [(buffer("inertial"), GLITCH, 10), (buffer("ideal"), GLITCH, 10), (RING, (), 5)]:
            assert solve(a, u, h).states == dense_oracle(a, u, h).states

    def test_errors(self):
        with pytest.raises(ArityMismatch):
            solve(buffer("ideal"), (), 3)
        with pytest.raises(ZeroDelay):
            buffer("ideal", tau=0)


class TestOracle:
    def test_constant_dynamics(self):
        traj = dense_oracle(CONST, GLITCH, 10, F(1, 4))
        assert traj.states == (Signal(0),)

    def test_latch_holds(self):
        assert dense_oracle(LATCH, (), 6).states == (Signal(1),)

    def test_ideal_buffer_quarter_step(self):
        a = buffer("ideal")
        assert dense_oracle(a, GLITCH, 10, F(1, 4)) == solve(a, GLITCH, 10)

    def test_grid_mismatch(self):
        with pytest.raises(GridMismatch):
            dense_oracle(buffer("ideal"), GLITCH, 10, F(1, 3))

    def test_default_step(self):
        assert default_step(buffer("ideal", F(1, 3)), GLITCH, 10) == F(1, 12)


class TestCheckSolution:
    def test_accepts_solution(self):
        a = buffer("ideal")
        assert check_solution(a, GLITCH, solve(a, GLITCH, 10), F(1, 4)) == []

    def test_reports_deleted_pulse(self):
        a = buffer("ideal")
        traj = dataclasses.replace(solve(a, GLITCH, 10), states=(Signal(0),))
        violations = check_solution(a, GLITCH, traj, F(1, 4))
        assert violations[0] == 3
        assert violations == [3, F(13, 4)]

    def test_constant_automaton(self):
        traj = dataclasses.replace(solve(CONST, GLITCH, 10), states=(Signal(0),))
        assert check_solution(CONST, GLITCH, traj) == []

    def test_inertial_toggle_too_early(self):
        a = buffer("inertial")
        u = (Signal.pulse(1, 3),)
        traj = dataclasses.replace(solve(a, u, 6), states=(Signal.pulse(F(3, 2), 4),))
        assert check_solution(a, u, traj)[0] == F(3, 2)

    def test_off_grid_state(self):
        a = buffer("inertial")
        traj = dataclasses.replace(solve(a, GLITCH, 10), states=(Signal.pulse(F(1, 3), 1),))
        with pytest.raises(GridMismatch):
            check_solution(a, GLITCH, traj, F(1, 4))


class TestAge:
    def test_full_history(self):
        traj = solve(CONST, GLITCH, 10)
        assert age_of_constancy(CONST, traj, 1, 7) == 7

    def test_after_toggle(self):
        a = buffer("ideal")
        traj = solve(a, GLITCH, 10)
        assert age_of_constancy(a, traj, 1, F(5, 2)) == F(1, 2)
        assert age_of_constancy(a, traj, "x1", 2) == 2

    def test_errors(self):
        a = buffer("ideal")
        traj = solve(a, GLITCH, 10)
        with pytest.raises(IndexOutOfRange):
            age_of_constancy(a, traj, 2, 1)
        with pytest.raises(BadInterval):
            age_of_constancy(a, traj, 1, 11)


class TestSettled:
    def test_examples(self):
        assert is_settled(buffer("inertial"), solve(buffer("inertial"), GLITCH, 10))
        assert not is_settled(RING, solve(RING, (), 5))
        assert is_settled(CONST, solve(CONST, (Signal(0),), 3))

    def test_needs_margin_after_last_event(self):
        a = buffer("ideal")
        assert not solve(a, GLITCH, 3).settled
        assert solve(a, GLITCH, F(9, 2)).settled

    def test_input_toggle_beyond_horizon(self):
        assert not solve(buffer("ideal"), (Signal.step(20),), 10).settled


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_random_automata_against_oracle(seed):
    rng = random.Random(seed)
    a = random_automaton(rng)
    u = random_inputs(rng, a.m)
    traj = solve(a, u, 12)
    assert traj == solve(a, u, 12)
    assert traj.states == dense_oracle(a, u, 12).states
    assert check_solution(a, u, traj) == []
    lattice = set(event_lattice(u, a.delays, 12))
    for s, kind, tau in zip(traj.states, a.kinds, a.delays):
        assert set(s.toggles) <= lattice
        if kind is DelayKind.INERTIAL:
            assert all(z >= tau for z in s.toggles)
            assert s.min_pulse_width() >= tau


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_ideal_coordinates_are_ideal_delays(seed):
    rng = random.Random(seed)
    a = random_automaton(rng)
    u = random_inputs(rng, a.m)
    traj = solve(a, u, 12)
    for i, kind in enumerate(a.kinds):
        if kind is not DelayKind.IDEAL:
            continue
        tau = a.delays[i]
        shifted = ideal_delay(a.generator[i], traj.states + u, tau)
        s = traj.states[i]
        pts = sorted({F(0), tau} | set(s.toggles) | set(shifted.toggles))
        for t in pts + [(p + q) / 2 for p, q in zip(pts, pts[1:])]:
            if t <= 12:
                assert s.value_at(t) == (shifted.value_at(t) if t >= tau else a.initial[i])


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_settled_trajectories_extend(seed):
    rng = random.Random(seed)
    a = random_automaton(rng)
    u = random_inputs(rng, a.m)
    traj = solve(a, u, 12)
    if traj.settled:
        longer = solve(a, u, 30)
        assert longer.states == traj.states and longer.settled


def test_excitation_signal():
    a = buffer("inertial")
    traj = solve(a, GLITCH, 10)
    assert excitation(a, traj, 1) == GLITCH[0]
