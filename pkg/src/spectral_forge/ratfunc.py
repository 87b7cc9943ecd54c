"""Reduced rational functions of x with monic denominator.

This is the coefficient field for everything downstream: entries of Lax
and transition matrices, coefficients of the y-polynomials fed to the
residue engine.  Canonical form (gcd-reduced, monic denominator) makes
structural equality coincide with mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction

from .qpoly import UniPoly, gcd, rat


class RatFuncX:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, (int, Fraction, str)):
            num = UniPoly([rat(num)], "x")
        if den is None:
            den = UniPoly([1], "x")
        elif isinstance(den, (int, Fraction, str)):
            den = UniPoly([rat(den)], "x")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _reduce(num, den):
        if num.is_zero():
            return UniPoly([], "x"), UniPoly([1], "x")
        g = gcd(num, den)
        if g.degree() > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.lead()
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        return num, den

    @classmethod
    def from_poly(cls, p: UniPoly):
        return cls(p)

    @classmethod
    def zero(cls):
        return cls(UniPoly([], "x"), UniPoly([1], "x"), _reduced=True)

    @classmethod
    def one(cls):
        return cls(UniPoly([1], "x"), UniPoly([1], "x"), _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.degree() == 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # Canonical form would allow structural comparison; cross products
        # are used anyway so equality never depends on normalization.
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((tuple(self.num.coeffs), tuple(self.den.coeffs)))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFuncX(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFuncX(self.num * other.den - other.num * self.den,
                        self.den * other.den)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RatFuncX(-self.num, self.den, _reduced=True)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFuncX(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFuncX(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __call__(self, x0):
        """Evaluate at a scalar; denominator must not vanish there."""
        dv = self.den(x0)
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes at %r" % (x0,))
        return self.num(x0) / dv

    def derivative(self):
        return RatFuncX(self.num.derivative() * self.den
                        - self.num * self.den.derivative(),
                        self.den * self.den)

    def to_text(self):
        if self.is_poly():
            return self.num.to_text()
        return "(%s)/(%s)" % (self.num.to_text(), self.den.to_text())

    def __repr__(self):
        return "RatFuncX(%s)" % self.to_text()


def _coerce(v):
    if isinstance(v, RatFuncX):
        return v
    if isinstance(v, (int, Fraction)):
        return RatFuncX(UniPoly([rat(v)], "x"))
    if isinstance(v, UniPoly):
        return RatFuncX(v)
    return NotImplemented


def ratfunc_equal_cross(a: RatFuncX, b: RatFuncX) -> bool:
    """Equality by cross-multiplication of reduced forms (the test oracle)."""
    return (a.num * b.den) == (b.num * a.den)
