"""Parser for rational-function text over q, x, y.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" exponent)?
    exponent := ["+" | "-"] INT | "(" ["+" | "-"] INT ")"
    atom   := INT | "q" | "x" | "y" | "(" expr ")"
"""

from __future__ import annotations

import re

from .arith import Q, X, Y, RatFunc, format_ratfunc
from .errors import DivisionByZero, ExprSyntaxError
from .shiftcase import QSHIFT, CaseTag

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")
_VARS = {"q": Q, "x": X, "y": Y}


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        start = m.start(m.lastindex)
        out.append((m.lastindex, m.group(m.lastindex), start))
        pos = m.end()
    out.append((0, "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, case: CaseTag):
        self.toks = _tokenize(text)
        self.i = 0
        self.allowed = {"x", "y", "q"} if case is QSHIFT else {"x", "y"}

    @property
    def tok(self):
        return self.toks[self.i]

    def _op(self, ch: str) -> bool:
        kind, val, _ = self.tok
        if kind == 3 and val == ch:
            self.i += 1
            return True
        return False

    def fail(self, msg: str):
        raise ExprSyntaxError(msg, self.tok[2])

    def parse(self) -> RatFunc:
        if self.tok[0] == 0:
            self.fail("empty expression")
        val = self.expr()
        if self.tok[0] != 0:
            self.fail(f"unexpected {self.tok[1]!r}")
        return val

    def expr(self) -> RatFunc:
        val = self.term()
        while True:
            if self._op("+"):
                val = val + self.term()
            elif self._op("-"):
                val = val - self.term()
            else:
                return val

    def term(self) -> RatFunc:
        val = self.unary()
        while True:
            if self._op("*"):
                val = val * self.unary()
            elif self.tok[0] == 3 and self.tok[1] == "/":
                pos = self.tok[2]
                self.i += 1
                den = self.unary()
                if den.is_zero():
                    raise DivisionByZero(f"division by zero at position {pos}")
                val = val / den
            else:
                return val

    def unary(self) -> RatFunc:
        if self._op("-"):
            return -self.unary()
        if self._op("+"):
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if not self._op("^"):
            return base
        pos = self.tok[2]
        e = self.exponent()
        if e < 0 and base.is_zero():
            raise DivisionByZero(f"zero raised to a negative power at position {pos}")
        return base ** e

    def exponent(self) -> int:
        paren = self._op("(")
        sign = 1
        if self._op("-"):
            sign = -1
        else:
            self._op("+")
        kind, val, _ = self.tok
        if kind != 1:
            self.fail("expected an integer exponent")
        self.i += 1
        if paren and not self._op(")"):
            self.fail("expected ')'")
        return sign * int(val)

    def atom(self) -> RatFunc:
        kind, val, pos = self.tok
        if kind == 1:
            self.i += 1
            return RatFunc.const(int(val))
        if kind == 2:
            if val not in self.allowed:
                self.fail(f"unknown variable {val!r}")
            self.i += 1
            return RatFunc(_VARS[val])
        if self._op("("):
            inner = self.expr()
            if not self._op(")"):
                self.fail("expected ')'")
            return inner
        if kind == 0:
            self.fail("unexpected end of input")
        self.fail(f"unexpected {val!r}")


def parse_ratfunc(text: str, case: CaseTag = QSHIFT) -> RatFunc:
    """Exact canonical value of ``text``; raises ExprSyntaxError or DivisionByZero."""
    return _Parser(text, CaseTag.parse(case)).parse()


def format_expr(f: RatFunc) -> str:
    return format_ratfunc(f)
