"""Recursive-descent parser for Boolean and temporal formulas.

Binding strength, tightest first::

    !   X-  X+  F  G  A  E      (prefix)
    &                           (left)
    ^                           (left)
    |                           (left)
    U                           (right)
    ->                          (right)

Identifiers match ``[a-zA-Z][a-zA-Z0-9_]*``; ``F G A E U`` are reserved,
and ``X`` is reserved only when immediately followed by ``-`` or ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import ParseError, UnknownIdentifier
from .formula import (
    AllPaths, Always, And, Const, Eventually, Formula, Implies, NextLeft, NextRight, Not, Or,
    SomePath, Until, Var, Xor, is_boolean, walk,
)

KEYWORDS = frozenset({"F", "G", "A", "E", "U"})
IDENTIFIER = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")

_PREFIX = {"!": Not, "X-": NextLeft, "X+": NextRight, "F": Eventually, "G": Always,
           "A": AllPaths, "E": SomePath}
# (token, node class, right associative), loosest first
_LEVELS = [("->", Implies, True), ("U", Until, True), ("|", Or, False), ("^", Xor, False),
           ("&", And, False)]


@dataclass(frozen=True)
class Token:
    kind: str  # 'op', 'ident', 'const', 'eof'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(Token("op", "->", i))
            i += 2
            continue
        if c in "!&^|()":
            tokens.append(Token("op", c, i))
            i += 1
            continue
        if c in "01" and not (i + 1 < len(text) and (text[i + 1].isalnum() or text[i + 1] == "_")):
            tokens.append(Token("const", c, i))
            i += 1
            continue
        m = IDENTIFIER.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {c!r}", i, text)
        word = m.group()
        end = m.end()
        if word == "X" and end < len(text) and text[end] in "-+" and not text.startswith("->", end):
            tokens.append(Token("op", "X" + text[end], i))
            i = end + 1
            continue
        tokens.append(Token("op" if word in KEYWORDS else "ident", word, i))
        i = end
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: frozenset[str] | None):
        self.text = text
        self.names = names
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.pos, self.text)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def parse(self) -> Formula:
        if self.tok.kind == "eof":
            raise self.error("empty formula")
        f = self.binary(0)
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return f

    def binary(self, level: int) -> Formula:
        if level == len(_LEVELS):
            return self.unary()
        op, cls, right_assoc = _LEVELS[level]
        left = self.binary(level + 1)
        if right_assoc:
            if self.accept(op):
                return cls(left, self.binary(level))
            return left
        while self.accept(op):
            left = cls(left, self.binary(level + 1))
        return left

    def unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "op" and tok.text in _PREFIX:
            self.i += 1
            return _PREFIX[tok.text](self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.tok
        if tok.kind == "const":
            self.i += 1
            return Const(int(tok.text))
        if tok.kind == "ident":
            self.i += 1
            if self.names is not None and tok.text not in self.names:
                raise UnknownIdentifier(f"unknown identifier {tok.text!r}", tok.pos, self.text)
            return Var(tok.text)
        if self.accept("("):
            f = self.binary(0)
            if not self.accept(")"):
                raise self.error("expected ')'")
            return f
        if tok.kind == "eof":
            raise self.error("unexpected end of formula")
        raise self.error(f"unexpected {tok.text!r}")


def parse_formula(text: str, names: Iterable[str] | None = None) -> Formula:
    """Parse a temporal formula.

    When ``names`` is given, identifiers outside it raise
    :class:`UnknownIdentifier`.
    """
    return _Parser(text, None if names is None else frozenset(names)).parse()


def parse_boolean(text: str, names: Iterable[str] | None = None) -> Formula:
    """Parse an expression that must not use temporal connectors or quantifiers."""
    f = parse_formula(text, names)
    if not is_boolean(f):
        bad = next(node for node in walk(f) if not is_boolean(node))
        raise ParseError(f"temporal connector {type(bad).__name__} not allowed here", None, text)
    return f


def is_identifier(name: str) -> bool:
    return IDENTIFIER.fullmatch(name) is not None and name not in KEYWORDS
