"""Asynchronous automata over continuous time, with linear and branching temporal logic."""

from .automaton import (
    Automaton, Trajectory, age_of_constancy, check_solution, default_step, dense_oracle,
    event_lattice, excitation, is_settled, solve,
)
from .branching import DelaySpace, PathSet, enumerate_paths, eval_formula, quantifier_holds
from .delay import DelayKind, ideal_delay, inertial_delay, min_pulse_width
from .errors import *  # noqa: F401,F403
from .formula import to_text
from .logic import (
    EvalContext, always_holds, eventually_holds, holds_at, next_holds, satisfied_in,
    truth_signal, until_holds,
)
from .parser import parse_boolean, parse_formula
from .signals import BooleanFunction, Signal, as_time, combine, format_time, make_signal, parse_time

__version__ = "0.1.0"
