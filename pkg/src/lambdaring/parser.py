"""Recursive-descent parser for the expression grammar.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' factor) | ('/' nat))*
    factor := '-' factor | atom ('^' '-'? nat)?
    atom   := nat | ident | op '(' nat ',' expr ')' | '(' expr ')'
    op     := 'lambda' | 'sigma' | 'adams'

``L`` is the Lefschetz motive, ``t`` and ``T`` are polynomial variables and
any other identifier is a free lambda-ring element (interned per namespace).
A negative exponent is accepted as an extension for motive denominators.
"""

import re

from .errors import ParseError
from .expr import RING_OPS, Leaf, add, as_expr, const, lefschetz_leaf, mul, polyvar_leaf, power, ring_op
from .operands import Free

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)", re.S)
RESERVED_POLYVARS = ("t", "T")


def _tokenize(text):
    tokens = []
    line, line_start, pos = 1, 0, 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            if text[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
        col = pos - line_start + 1
        if pos >= n:
            tokens.append(("end", None, line, col))
            return tokens
        m = _TOKEN.match(text, pos)
        pos = m.end()
        num, ident, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num), line, col))
        elif ident is not None:
            tokens.append(("ident", ident, line, col))
        elif sym in "+-*/^(),":
            tokens.append((sym, sym, line, col))
        else:
            raise ParseError(f"unexpected character {sym!r}", line, col)


class _Parser:
    def __init__(self, text, namespace):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ns = namespace

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, what=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise self.error(f"expected {what or kind}", tok)
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "end" else repr(str(tok[1]))
        return ParseError(f"{message}, found {found}", tok[2], tok[3])

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            raise self.error("expected operator or end of input")
        return e

    def expr(self):
        terms = [self.term()]
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            terms.append(t if op == "+" else -t)
        return add(*terms)

    def term(self):
        factors = [self.factor()]
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            if op == "*":
                factors.append(self.factor())
            else:
                tok = self.take("num", "an integer divisor (division is only by rational literals)")
                if tok[1] == 0:
                    raise ParseError("division by zero", tok[2], tok[3])
                factors.append(const(1) / const(tok[1]))
        return mul(*factors)

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            k = self.take("num", "an integer exponent")[1]
            return power(base, -k if neg else k)
        return base

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "num":
            self.take()
            return const(tok[1])
        if kind == "(":
            self.take()
            e = self.expr()
            self.take(")", "')'")
            return e
        if kind == "ident":
            self.take()
            name = tok[1]
            if self.peek()[0] == "(":
                return self.call(name, tok)
            return self.identifier(name)
        raise self.error("expected an expression", tok)

    def call(self, name, tok):
        if name not in RING_OPS:
            raise ParseError(f"unknown function {name!r}", tok[2], tok[3])
        self.take("(")
        deg = self.peek()
        if deg[0] != "num":
            raise self.error(f"{name} takes an integer degree as its first argument", deg)
        self.take()
        self.take(",", "','")
        arg = self.expr()
        self.take(")", "')'")
        try:
            return ring_op(name, deg[1], arg)
        except ValueError as exc:
            raise ParseError(str(exc), deg[2], deg[3]) from None

    def identifier(self, name):
        if name in RING_OPS:
            raise ParseError(f"{name} must be called as {name}(n, expr)", *self.tokens[self.i - 1][2:])
        if name == "L":
            return lefschetz_leaf()
        if name in self.ns:
            return as_expr(self.ns[name])
        if name in RESERVED_POLYVARS:
            return polyvar_leaf(name)
        e = Leaf(Free(name))
        self.ns[name] = e
        return e


def parse_expr(text, namespace=None):
    """Parse ``text``; unknown identifiers become free elements stored in ``namespace``."""
    if namespace is None:
        namespace = {}
    return _Parser(text, namespace).parse()
