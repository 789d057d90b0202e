"""Recursive-descent parser for algebraic normal form expressions.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '^') term)*
    term   := factor ('*' factor)*
    factor := 'x' digits | '0' | '1' | '(' expr ')'

'+' and '^' both mean XOR; '*' is AND and cannot be omitted.  Variables are
1-indexed, x1 being the most significant input bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import TruthTable
from .errors import AnfSyntaxError
from .transforms import Anf


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Xor:
    terms: tuple


@dataclass(frozen=True)
class And:
    factors: tuple


AnfExpr = Const | Var | Xor | And


class _Parser:
    def __init__(self, src: str, n: int):
        self.src = src
        self.n = n
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def parse(self):
        node = self.expr()
        if self._peek():
            raise AnfSyntaxError(f"unexpected {self._peek()!r}", self.pos)
        return node

    def expr(self):
        terms = [self.term()]
        while self._peek() in ("+", "^"):
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Xor(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self._peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else And(tuple(factors))

    def factor(self):
        c = self._peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            node = self.expr()
            if self._peek() != ")":
                raise AnfSyntaxError("expected ')'", self.pos)
            self.pos += 1
            return node
        if c in ("0", "1"):
            self.pos += 1
            if self.pos < len(self.src) and self.src[self.pos].isdigit():
                raise AnfSyntaxError("constants must be 0 or 1", start)
            return Const(int(c))
        if c == "x":
            self.pos += 1
            end = self.pos
            while end < len(self.src) and self.src[end].isdigit():
                end += 1
            if end == self.pos:
                raise AnfSyntaxError("expected variable index after 'x'", self.pos)
            index = int(self.src[self.pos:end])
            if not 1 <= index <= self.n:
                raise AnfSyntaxError(f"variable x{index} out of range for n={self.n}", start)
            self.pos = end
            return Var(index)
        raise AnfSyntaxError(f"unexpected {c!r}" if c else "unexpected end of input", self.pos)


def parse(src: str, n: int) -> AnfExpr:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return _Parser(src, n).parse()


def eval_to_table(e: AnfExpr, n: int) -> TruthTable:
    idx = np.arange(1 << n, dtype=np.int64)

    def ev(node) -> np.ndarray:
        if isinstance(node, Const):
            return np.full(idx.shape, node.value, dtype=np.uint8)
        if isinstance(node, Var):
            return ((idx >> (n - node.index)) & 1).astype(np.uint8)
        if isinstance(node, Xor):
            return reduce(np.bitwise_xor, (ev(t) for t in node.terms))
        return reduce(np.bitwise_and, (ev(f) for f in node.factors))

    return TruthTable.from_bits(ev(e))


def to_string(e: AnfExpr) -> str:
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Xor):
        return " + ".join(to_string(t) for t in e.terms)
    return "*".join(f"({to_string(f)})" if isinstance(f, Xor) else to_string(f) for f in e.factors)


def from_anf(anf: Anf) -> AnfExpr:
    """Canonical expression for a monomial set (the same order Anf.__str__ prints)."""
    return parse(str(anf), max(anf.n_vars, 1))


def table_from_anf_string(src: str, n: int) -> TruthTable:
    return eval_to_table(parse(src, n), n)
