"""CSV traces: one ``time,signal,value`` row per initial value and per toggle."""

from __future__ import annotations

import csv
import io
from typing import Iterable, TextIO

from .automaton import Trajectory
from .signals import Signal, format_time, parse_time

HEADER = ("time", "signal", "value")


def trace_rows(traj: Trajectory) -> list[tuple[str, str, int]]:
    """Rows sorted by time; ties keep state-then-input declaration order."""
    rows = []
    for order, (name, s) in enumerate(traj.signals.items()):
        rows.append((0, order, name, s.initial))
        value = s.initial
        for z in s.toggles:
            value ^= 1
            rows.append((z, order, name, value))
    rows.sort(key=lambda r: (r[0], r[1]))
    return [(format_time(t), name, v) for t, _, name, v in rows]


def write_trace(traj: Trajectory, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    writer.writerows(trace_rows(traj))


def trace_text(traj: Trajectory) -> str:
    buf = io.StringIO()
    write_trace(traj, buf)
    return buf.getvalue()


def read_trace(lines: Iterable[str]) -> dict[str, Signal]:
    """Rebuild the signals of a trace, in order of first appearance."""
    reader = csv.reader(lines)
    header = next(reader)
    if tuple(header) != HEADER:
        raise ValueError(f"unexpected trace header {header}")
    initial: dict[str, int] = {}
    toggles: dict[str, list] = {}
    for time_text, name, value_text in reader:
        t, value = parse_time(time_text), int(value_text)
        if name not in initial:
            if t != 0:
                raise ValueError(f"first row of {name} is not at time 0")
            initial[name], toggles[name] = value, []
            continue
        expected = initial[name] ^ ((len(toggles[name]) + 1) & 1)
        if value != expected:
            raise ValueError(f"row for {name} at {time_text} does not toggle the value")
        toggles[name].append(t)
    return {name: Signal(initial[name], tuple(toggles[name])) for name in initial}
