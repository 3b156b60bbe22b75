"""Text format describing an automaton, its input wave and run options.

Example::

    # inertial buffer fed by a short glitch
    [coords]
    x1 = inertial, 1, 0        # name = kind, delay, initial bit

    [generator]
    x1 = u1                    # one Boolean expression per coordinate

    [inputs]
    u1 = 0 : 2, 5/2            # initial bit : toggle times

    [options]
    horizon = 10
    step = 1/4                 # optional grid step for verification

Times use the rational syntax ``p`` or ``p/q``. ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .automaton import Automaton, InputWave
from .delay import DelayKind
from .errors import EAAError, ParseError, SpecError
from .formula import to_text
from .parser import is_identifier, parse_boolean
from .signals import BooleanFunction, Signal, format_time, parse_time

SECTIONS = ("coords", "generator", "inputs", "options")


@dataclass(frozen=True)
class SpecFile:
    automaton: Automaton
    inputs: InputWave
    horizon: Fraction | None = None
    step: Fraction | None = None


def _time(text: str, section: str, line: int, what: str) -> Fraction:
    try:
        return parse_time(text)
    except ValueError:
        raise SpecError(f"{what} {text.strip()!r} is not a rational number", section, line) from None


def _bit(text: str, section: str, line: int, what: str) -> int:
    text = text.strip()
    if text not in ("0", "1"):
        raise SpecError(f"{what} must be 0 or 1, got {text!r}", section, line)
    return int(text)


def parse_spec(text: str) -> SpecFile:
    section = None
    coords: dict[str, tuple[DelayKind, Fraction, int, int]] = {}
    exprs: dict[str, tuple[str, int]] = {}
    inputs: dict[str, Signal] = {}
    options: dict[str, Fraction] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or line[1:-1].strip() not in SECTIONS:
                raise SpecError(f"unknown section header {line!r}", None, lineno)
            section = line[1:-1].strip()
            continue
        if section is None:
            raise SpecError("entry before any section header", None, lineno)
        name, eq, value = line.partition("=")
        name = name.strip()
        if not eq:
            raise SpecError("expected 'name = value'", section, lineno)

        if section == "options":
            if name not in ("horizon", "step"):
                raise SpecError(f"unknown option {name!r}", section, lineno)
            options[name] = _time(value, section, lineno, name)
            if name == "horizon" and options[name] < 0:
                raise SpecError("horizon must be non-negative", section, lineno)
            if name == "step" and options[name] <= 0:
                raise SpecError("step must be positive", section, lineno)
            continue

        if not is_identifier(name):
            raise SpecError(f"{name!r} is not a valid identifier", section, lineno)

        if section == "coords":
            if name in coords:
                raise SpecError(f"coordinate {name!r} declared twice", section, lineno)
            fields = [f.strip() for f in value.split(",")]
            if len(fields) != 3:
                raise SpecError("expected 'kind, delay, init'", section, lineno)
            try:
                kind = DelayKind(fields[0])
            except ValueError:
                raise SpecError(f"kind must be 'ideal' or 'inertial', got {fields[0]!r}",
                                section, lineno) from None
            delay = _time(fields[1], section, lineno, "delay")
            if delay <= 0:
                raise SpecError("delay must be positive", section, lineno)
            coords[name] = (kind, delay, _bit(fields[2], section, lineno, "init"), lineno)
        elif section == "generator":
            if name in exprs:
                raise SpecError(f"second generator line for {name!r}", section, lineno)
            exprs[name] = (value.strip(), lineno)
        else:
            if name in inputs:
                raise SpecError(f"input {name!r} declared twice", section, lineno)
            bit, _, rest = value.partition(":")
            toggles = [_time(z, section, lineno, "toggle") for z in rest.split(",") if z.strip()]
            try:
                inputs[name] = Signal(_bit(bit, section, lineno, "initial value"), tuple(toggles))
            except EAAError as exc:
                raise SpecError(str(exc), section, lineno) from None

    if not coords:
        raise SpecError("no coordinates declared", "coords")
    clash = set(coords) & set(inputs)
    if clash:
        raise SpecError(f"{sorted(clash)[0]!r} is both a coordinate and an input", "inputs")
    state_names = tuple(coords)
    input_names = tuple(inputs)
    names = state_names + input_names
    generator = []
    for name in state_names:
        if name not in exprs:
            raise SpecError(f"no generator line for coordinate {name!r}", "generator")
        expr, lineno = exprs[name]
        try:
            generator.append(BooleanFunction(names, parse_boolean(expr, names)))
        except ParseError as exc:
            raise SpecError(f"{name}: {exc}", "generator", lineno) from None
    extra = set(exprs) - set(coords)
    if extra:
        name = sorted(extra)[0]
        raise SpecError(f"generator for undeclared coordinate {name!r}", "generator", exprs[name][1])

    a = Automaton(state_names, input_names, tuple(generator),
                  tuple(coords[n][1] for n in state_names), tuple(coords[n][2] for n in state_names),
                  tuple(coords[n][0] for n in state_names))
    return SpecFile(a, tuple(inputs.values()), options.get("horizon"), options.get("step"))


def load_spec(path: str | Path) -> SpecFile:
    return parse_spec(Path(path).read_text())


def serialize_spec(spec: SpecFile) -> str:
    a = spec.automaton
    lines = ["[coords]"]
    for name, kind, tau, x0 in zip(a.state_names, a.kinds, a.delays, a.initial):
        lines.append(f"{name} = {kind}, {format_time(tau)}, {x0}")
    lines += ["", "[generator]"]
    for name, f in zip(a.state_names, a.generator):
        lines.append(f"{name} = {to_text(f.body)}")
    if a.input_names:
        lines += ["", "[inputs]"]
        for name, s in zip(a.input_names, spec.inputs):
            lines.append(f"{name} = {s.initial} : {', '.join(format_time(z) for z in s.toggles)}".rstrip())
    if spec.horizon is not None or spec.step is not None:
        lines += ["", "[options]"]
        if spec.horizon is not None:
            lines.append(f"horizon = {format_time(spec.horizon)}")
        if spec.step is not None:
            lines.append(f"step = {format_time(spec.step)}")
    return "\n".join(lines) + "\n"
