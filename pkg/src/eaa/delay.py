"""Ideal and inertial delay elements as signal transformers."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Sequence

from .errors import ZeroDelay
from .signals import BooleanFunction, Signal, TimeLike, as_bit, as_time, combine, format_time


class DelayKind(enum.Enum):
    IDEAL = "ideal"
    INERTIAL = "inertial"

    def __str__(self) -> str:
        return self.value


def check_delay(tau: TimeLike) -> Fraction:
    tau = as_time(tau)
    if tau <= 0:
        raise ZeroDelay(f"delay must be positive, got {format_time(tau)}")
    return tau


def ideal_delay(f: BooleanFunction, inputs: Sequence[Signal], tau: TimeLike) -> Signal:
    """``x(t) = f(u(t - tau))`` for ``t >= tau`` and 0 before."""
    tau = check_delay(tau)
    return combine(f, inputs).shift(tau)


def inertial_delay(f: BooleanFunction, inputs: Sequence[Signal], tau: TimeLike, x0: int) -> Signal:
    """Inertial delay element with initial output ``x0``.

    The output holds ``x0`` on ``[0, tau)``. Afterwards it adopts the value
    of the excitation ``e = f(u)`` only once ``e`` has been constant on a
    whole window ``[t - tau, t)``; pulses of ``e`` shorter than ``tau`` are
    swallowed, longer ones come out delayed by ``tau``.
    """
    tau = check_delay(tau)
    x0 = as_bit(x0)
    e = combine(f, inputs)
    candidates = sorted({tau} | {z + tau for z in e.switches})
    current = x0
    toggles = []
    for t in candidates:
        c = e.constant_on(t - tau, t)
        if c is not None and c != current:
            toggles.append(t)
            current = c
    return Signal(x0, tuple(toggles))


def min_pulse_width(s: Signal) -> Fraction | float:
    return s.min_pulse_width()
