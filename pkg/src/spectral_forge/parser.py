"""Text and JSON forms of bivariate polynomials over Q.

The text grammar is deliberately small: terms in x and y combined with
+, -, explicit *, and ^ with nonnegative integer exponents.  A '/' is
part of a rational literal only (12/7); division of expressions is not
in the language.  Errors carry the character position.

The JSON form is a list of [i, j, coeff] triples with coeff an integer
or a "p/q" string.  parse_curve accepts either form; the canonical
printer output of BiPoly.to_text round-trips through the text grammar.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError
from .qpoly import BiPoly, rat

_NUM = "num"
_VAR = "var"
_OP = "op"
_END = "end"


def _syntax_error(text, pos, message):
    near = text[pos:pos + 12] if pos < len(text) else "end of input"
    raise ValidationError("%s at position %d (near %r)" % (message, pos, near),
                          position=pos, near=near)


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == "/":
                if i + 1 >= n or not text[i + 1].isdigit():
                    _syntax_error(text, i, "expected digits after '/'")
                i += 1
                dstart = i
                while i < n and text[i].isdigit():
                    i += 1
                num = Fraction(int(text[start:dstart - 1]), int(text[dstart:i]))
                tokens.append((_NUM, num, start, False))
            else:
                tokens.append((_NUM, Fraction(text[start:i]), start, True))
            continue
        if ch in "xy":
            tokens.append((_VAR, ch, i, None))
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((_OP, ch, i, None))
            i += 1
            continue
        if ch == "/":
            _syntax_error(text, i,
                          "'/' is only valid inside a rational literal")
        _syntax_error(text, i, "unexpected character %r" % ch)
    tokens.append((_END, None, n, None))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, ch):
        kind, val, pos, _ = self.peek()
        if kind != _OP or val != ch:
            _syntax_error(self.text, pos, "expected %r" % ch)
        return self.advance()

    def parse(self) -> BiPoly:
        out = self.expr()
        kind, _, pos, _ = self.peek()
        if kind != _END:
            _syntax_error(self.text, pos, "unexpected trailing input")
        return out

    def expr(self) -> BiPoly:
        kind, val, _, _ = self.peek()
        negate = False
        if kind == _OP and val in "+-":
            self.advance()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, _, _ = self.peek()
            if kind == _OP and val in "+-":
                self.advance()
                rhs = self.term()
                acc = acc - rhs if val == "-" else acc + rhs
            else:
                return acc

    def term(self) -> BiPoly:
        acc = self.factor()
        while True:
            kind, val, _, _ = self.peek()
            if kind == _OP and val == "*":
                self.advance()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> BiPoly:
        kind, val, pos, _ = self.advance()
        if kind == _NUM:
            base = BiPoly.const(val)
        elif kind == _VAR:
            base = BiPoly.var_x() if val == "x" else BiPoly.var_y()
        elif kind == _OP and val == "(":
            base = self.expr()
            self.expect_op(")")
        else:
            _syntax_error(self.text, pos, "expected a number, variable, or '('")
        kind, val, pos, _ = self.peek()
        if kind == _OP and val == "^":
            self.advance()
            base = base ** self.exponent()
        return base

    def exponent(self) -> int:
        kind, val, pos, is_int = self.advance()
        if kind != _NUM:
            _syntax_error(self.text, pos,
                          "exponent must be a nonnegative integer literal")
        if not is_int:
            _syntax_error(self.text, pos,
                          "fractional exponents are not polynomial")
        return int(val)


def parse_polynomial(text: str) -> BiPoly:
    """Parse the text grammar into a BiPoly in x and y."""
    if not isinstance(text, str):
        raise ValidationError("polynomial text must be a string")
    if not text.strip():
        raise ValidationError("empty polynomial text")
    return _Parser(text).parse()


def parse_curve(source) -> BiPoly:
    """Accept either polynomial text or a [[i, j, coeff], ...] triple list."""
    if isinstance(source, str):
        return parse_polynomial(source)
    if isinstance(source, BiPoly):
        return source
    if isinstance(source, (list, tuple)):
        terms = {}
        for entry in source:
            if not isinstance(entry, (list, tuple)) or len(entry) != 3:
                raise ValidationError(
                    "curve term must be [i, j, coeff], got %r" % (entry,))
            i, j, c = entry
            if not isinstance(i, int) or not isinstance(j, int):
                raise ValidationError(
                    "curve term exponents must be integers, got %r" % (entry,))
            key = (i, j)
            terms[key] = terms.get(key, Fraction(0)) + rat(c)
        return BiPoly(terms)
    raise ValidationError("cannot interpret %r as a curve polynomial" % (source,))
