"""Recursive-descent parser for the shared expression grammar.

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := base ("^" nat)?
    base   := ident | nat | "(" expr ")" | "-" factor

"g" is reserved for the F_q generator; integer literals reduce mod p.  The
target field decides what identifiers mean via its lookup() method, so the
same parser serves F_q, rational function fields and towers.
"""

import re

from ..errors import ParseError

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[-+*/^()])")


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.items = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                rest = text[pos:].strip()
                if not rest:
                    break
                raise ParseError(f"unexpected character {rest[0]!r}",
                                 col=pos + 1)
            self.items.append((m.group(1), m.start(1)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.items[self.i][0] if self.i < len(self.items) else None

    def next(self):
        tok = self.items[self.i]
        self.i += 1
        return tok

    def col(self):
        if self.i < len(self.items):
            return self.items[self.i][1] + 1
        return len(self.text) + 1


def parse_expression(text, field):
    """Parse text into an element of field (anything with lookup/from_int)."""
    toks = _Tokens(text)
    value = _expr(toks, field)
    if toks.peek() is not None:
        raise ParseError(f"trailing input {toks.peek()!r}", col=toks.col())
    return value


def _expr(toks, field):
    value = _term(toks, field)
    while toks.peek() in ("+", "-"):
        op, _ = toks.next()
        rhs = _term(toks, field)
        value = value + rhs if op == "+" else value - rhs
    return value


def _term(toks, field):
    value = _factor(toks, field)
    while toks.peek() in ("*", "/"):
        op, _ = toks.next()
        rhs = _factor(toks, field)
        value = value * rhs if op == "*" else value / rhs
    return value


def _factor(toks, field):
    value = _base(toks, field)
    if toks.peek() == "^":
        toks.next()
        tok = toks.peek()
        if tok is None or not tok.isdigit():
            raise ParseError("exponent must be a natural number",
                             col=toks.col())
        n, _ = toks.next()
        value = value ** int(n)
    return value


def _base(toks, field):
    tok = toks.peek()
    if tok is None:
        raise ParseError("unexpected end of expression", col=toks.col())
    if tok == "(":
        toks.next()
        value = _expr(toks, field)
        if toks.peek() != ")":
            raise ParseError("expected ')'", col=toks.col())
        toks.next()
        return value
    if tok == "-":
        toks.next()
        return -_factor(toks, field)
    name, start = toks.next()
    if name.isdigit():
        return field.from_int(int(name))
    try:
        return field.lookup(name)
    except KeyError:
        raise ParseError(f"unknown identifier {name!r}", col=start + 1)
