"""Formula trees.

Boolean expressions (the generator functions of an automaton and the
atoms of temporal formulas) and temporal formulas share one node
hierarchy: a Boolean expression is simply a formula that uses no
temporal connector and no path quantifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping


@dataclass(frozen=True)
class Formula:
    def __invert__(self) -> Formula:
        return Not(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __xor__(self, other: Formula) -> Formula:
        return Xor(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Const(Formula):
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"Boolean constant must be 0 or 1, got {self.value!r}")


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Xor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class NextLeft(Formula):
    """Truth of the operand at the left-limit state x(t-0)."""

    operand: Formula


@dataclass(frozen=True)
class NextRight(Formula):
    """Truth of the operand at the right-limit state x(t+0)."""

    operand: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    operand: Formula


@dataclass(frozen=True)
class Always(Formula):
    operand: Formula


@dataclass(frozen=True)
class AllPaths(Formula):
    operand: Formula


@dataclass(frozen=True)
class SomePath(Formula):
    operand: Formula


TRUE = Const(1)
FALSE = Const(0)

BOOLEAN_BINARY = (And, Or, Xor, Implies)
UNARY = (Not, NextLeft, NextRight, Eventually, Always, AllPaths, SomePath)
BINARY = (And, Or, Xor, Implies, Until)
TEMPORAL = (NextLeft, NextRight, Until, Eventually, Always)
UNBOUNDED = (Until, Eventually, Always)
QUANTIFIERS = (AllPaths, SomePath)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, UNARY):
        return (f.operand,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def variables(f: Formula) -> set[str]:
    return {node.name for node in walk(f) if isinstance(node, Var)}


def contains(f: Formula, kinds: tuple[type, ...]) -> bool:
    return any(isinstance(node, kinds) for node in walk(f))


def is_boolean(f: Formula) -> bool:
    return not contains(f, TEMPORAL + QUANTIFIERS)


def is_closed(f: Formula) -> bool:
    """True when every variable occurrence sits under a path quantifier."""
    if isinstance(f, QUANTIFIERS):
        return True
    if isinstance(f, Var):
        return False
    return all(is_closed(c) for c in children(f))


def evaluate(f: Formula, env: Mapping[str, int]) -> int:
    """Evaluate a Boolean expression under an assignment of bits to names."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return env[f.name]
    if isinstance(f, Not):
        return 1 - evaluate(f.operand, env)
    if isinstance(f, And):
        return evaluate(f.left, env) & evaluate(f.right, env)
    if isinstance(f, Or):
        return evaluate(f.left, env) | evaluate(f.right, env)
    if isinstance(f, Xor):
        return evaluate(f.left, env) ^ evaluate(f.right, env)
    if isinstance(f, Implies):
        return (1 - evaluate(f.left, env)) | evaluate(f.right, env)
    raise TypeError(f"not a Boolean expression: {to_text(f)}")


def compile_boolean(f: Formula, names: tuple[str, ...]) -> Callable[[tuple[int, ...]], int]:
    """Turn a Boolean expression into a function of a positional bit tuple."""
    index = {name: i for i, name in enumerate(names)}

    def build(node: Formula) -> Callable[[tuple[int, ...]], int]:
        if isinstance(node, Const):
            v = node.value
            return lambda bits: v
        if isinstance(node, Var):
            i = index[node.name]
            return lambda bits: bits[i]
        if isinstance(node, Not):
            a = build(node.operand)
            return lambda bits: 1 - a(bits)
        if isinstance(node, BOOLEAN_BINARY):
            a, b = build(node.left), build(node.right)
            if isinstance(node, And):
                return lambda bits: a(bits) & b(bits)
            if isinstance(node, Or):
                return lambda bits: a(bits) | b(bits)
            if isinstance(node, Xor):
                return lambda bits: a(bits) ^ b(bits)
            return lambda bits: (1 - a(bits)) | b(bits)
        raise TypeError(f"not a Boolean expression: {to_text(node)}")

    return build(f)


# Binding strength used by the printer; must agree with the parser.
_PREC = {Implies: 1, Until: 2, Or: 3, Xor: 4, And: 5}
_SYMBOL = {Implies: "->", Until: "U", Or: "|", Xor: "^", And: "&"}
_PREFIX = {Not: "!", NextLeft: "X-", NextRight: "X+", Eventually: "F", Always: "G",
           AllPaths: "A", SomePath: "E"}
_RIGHT_ASSOC = (Implies, Until)


def to_text(f: Formula) -> str:
    """Render a formula in the concrete syntax accepted by :func:`eaa.parser.parse_formula`.

    Parentheses are emitted only where the grammar needs them, so
    ``parse_formula(to_text(f)) == f`` for every formula.
    """
    return _render(f, 0)


def _render(f: Formula, ctx: int) -> str:
    if isinstance(f, Const):
        return str(f.value)
    if isinstance(f, Var):
        return f.name
    if type(f) in _PREFIX:
        sym = _PREFIX[type(f)]
        inner = _render(f.operand, 6)
        sep = "" if sym == "!" else " "
        return f"{sym}{sep}{inner}"
    prec = _PREC[type(f)]
    if type(f) in _RIGHT_ASSOC:
        left, right = _render(f.left, prec + 1), _render(f.right, prec)
    else:
        left, right = _render(f.left, prec), _render(f.right, prec + 1)
    text = f"{left} {_SYMBOL[type(f)]} {right}"
    return f"({text})" if prec < ctx else text
