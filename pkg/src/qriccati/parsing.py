"""Recursive-descent parser for rational expressions in ``z``.

Grammar (precedence ``^`` > unary minus > ``* /`` > ``+ -``; binary
operators associate to the left)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' ['-'] integer]
    atom   := number | 'i' | 'z' | '(' expr ')'
    number := integer | decimal

A rational literal ``a/b`` is read as a division, which has the same value.
The AST is lowered to an exact :class:`~qriccati.exact.RationalFunction`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import CQ, I, QRiccatiError, RationalFunction, Z, as_rational_function


class ParseError(QRiccatiError, ValueError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{exp}")


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, ImagUnit, Var, Neg, BinOp, Pow]


# -- tokenizer -------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<num>\d+\.\d*|\.\d+|\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'op', 'eof'
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _fail(self, message, expected=()):
        t = self.tok
        raise ParseError(message, t.line, t.column, expected)

    def _accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self._fail(f"unexpected {self.tok.text!r}", {"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self._accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self._accept("^"):
            negative = self._accept("-")
            t = self.tok
            if t.kind != "num":
                if t.kind == "op" and t.text == "(":
                    self._fail("non-integer exponent", {"integer"})
                self._fail(f"unexpected {t.text or 'end of input'!r}", {"integer"})
            if not t.text.isdigit():
                self._fail("non-integer exponent", {"integer"})
            self.i += 1
            exp = int(t.text)
            return Pow(base, -exp if negative else exp)
        return base

    _ATOM_START = {"number", "i", "z", "(", "-"}

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(Fraction(t.text))
        if t.kind == "ident":
            if t.text == "z":
                self.i += 1
                return Var()
            if t.text == "i":
                self.i += 1
                return ImagUnit()
            self._fail(f"unknown identifier {t.text!r}", {"z", "i"})
        if self._accept("("):
            node = self.expr()
            if not self._accept(")"):
                self._fail(f"unexpected {self.tok.text or 'end of input'!r}", {")"})
            return node
        self._fail(f"unexpected {t.text or 'end of input'!r}", self._ATOM_START)


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def lower(node: Node) -> RationalFunction:
    """Evaluate an AST to an exact rational function."""
    if isinstance(node, Num):
        return RationalFunction.constant(node.value)
    if isinstance(node, ImagUnit):
        return RationalFunction.constant(I)
    if isinstance(node, Var):
        return RationalFunction(Z)
    if isinstance(node, Neg):
        return -lower(node.operand)
    if isinstance(node, Pow):
        return lower(node.base) ** node.exponent
    left, right = lower(node.left), lower(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right


def parse_expression(text: str) -> RationalFunction:
    node = parse_ast(text)
    try:
        return lower(node)
    except ZeroDivisionError as exc:
        raise ParseError(f"expression divides by zero ({exc})", 1, 1) from None


def parse_scalar(text: str) -> CQ:
    """Parse a constant expression such as ``-1/2`` or ``1/5+3/10*i``."""
    f = parse_expression(text)
    if not f.is_constant:
        raise ParseError("expected a constant (no z)", 1, 1)
    return f.constant_value()


def print_expression(f) -> str:
    return str(as_rational_function(f))
