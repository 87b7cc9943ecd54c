"""Polynomials in y over the rational-function field Q(x), and the
residue engine operand built on them.

YRatFunc keeps its denominator factored: rational linear factors
(y - c)^k whose roots are the only residue points, and opaque polynomial
factors (typically E(x, y)) whose y-roots are deliberately never treated
as residue points.  Pole orders are read off after per-factor synthetic
cancellation, so no bivariate gcd is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import ValidationError
from .qpoly import BiPoly, UniPoly, rat
from .ratfunc import RatFuncX, _coerce as _coerce_rf


def _rf(v) -> RatFuncX:
    out = _coerce_rf(v)
    if out is NotImplemented:
        raise TypeError("cannot use %r as a Q(x) coefficient" % (v,))
    return out


class YPoly:
    """Dense polynomial in y with RatFuncX coefficients, ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_rf(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def variable(cls):
        return cls([0, 1])

    @classmethod
    def from_bipoly(cls, e: BiPoly):
        return cls([RatFuncX(a) for a in e.coeffs_in_y()])

    @classmethod
    def from_unipoly_y(cls, p: UniPoly):
        """Lift a UniPoly in y to RatFuncX coefficients."""
        return cls([RatFuncX(UniPoly([c], "x")) for c in p.coeffs])

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self) -> RatFuncX:
        return self.coeffs[-1] if self.coeffs else RatFuncX.zero()

    def __getitem__(self, k) -> RatFuncX:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RatFuncX.zero()

    def __eq__(self, other):
        if not isinstance(other, YPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return YPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return YPoly([self[k] - other[k] for k in range(n)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return YPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, YPoly):
            if self.is_zero() or other.is_zero():
                return YPoly()
            out = [RatFuncX.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return YPoly(out)
        c = _rf(other)
        return YPoly([a * c for a in self.coeffs])

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, YPoly):
            return other
        return YPoly([_rf(other)])

    def divmod(self, other: "YPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero y-polynomial")
        rem = list(self.coeffs)
        dl = other.degree()
        lead = other.lead()
        if self.degree() < dl:
            return YPoly(), YPoly(rem)
        quo = [RatFuncX.zero()] * (self.degree() - dl + 1)
        for k in range(len(quo) - 1, -1, -1):
            c = rem[k + dl] / lead
            quo[k] = c
            if not c.is_zero():
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return YPoly(quo), YPoly(rem[:dl])

    def exact_div(self, other: "YPoly"):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValidationError("y-polynomial division left a remainder")
        return q

    def divide_linear(self, c):
        """Synthetic division by (y - c) for rational c: (quotient, remainder)."""
        c = _rf(rat(c))
        if self.is_zero():
            return YPoly(), RatFuncX.zero()
        quo = [RatFuncX.zero()] * max(self.degree(), 0)
        acc = RatFuncX.zero()
        for k in range(self.degree(), 0, -1):
            acc = acc * c + self.coeffs[k]
            quo[k - 1] = acc
        rem = acc * c + self.coeffs[0]
        return YPoly(quo), rem

    def derivative(self):
        return YPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def eval_y(self, c) -> RatFuncX:
        """Evaluate at rational y = c, result in Q(x)."""
        c = _rf(rat(c))
        acc = RatFuncX.zero()
        for coef in reversed(self.coeffs):
            acc = acc * c + coef
        return acc

    def eval_xy(self, x0, y0):
        """Numeric (or exact scalar) evaluation; coefficients eval at x0."""
        acc = y0 * 0
        for coef in reversed(self.coeffs):
            acc = acc * y0 + coef(x0)
        return acc

    def to_text(self):
        if self.is_zero():
            return "0"
        chunks = []
        for k in range(self.degree(), -1, -1):
            c = self[k]
            if c.is_zero():
                continue
            mono = "1" if k == 0 else ("y" if k == 1 else "y^%d" % k)
            chunks.append("(%s)*%s" % (c.to_text(), mono))
        return " + ".join(chunks)

    def __repr__(self):
        return "YPoly(%s)" % self.to_text()


class YRatFunc:
    """num / (prod of (y - c)^k * prod of opaque y-polynomials).

    The linear factors' roots are the only candidate residue points; the
    opaque factors (E(x, y) in practice) are carried through evaluation
    but never contribute residue points of their own.
    """

    __slots__ = ("num", "linear", "opaque")

    def __init__(self, num: YPoly, linear=None, opaque=None):
        self.num = num
        self.linear = {}
        for c, k in (linear or {}).items():
            if k < 0:
                raise ValidationError("negative multiplicity in denominator")
            if k:
                c = rat(c)
                self.linear[c] = self.linear.get(c, 0) + k
        self.opaque = list(opaque or [])

    @classmethod
    def from_poly(cls, num: YPoly):
        return cls(num)

    def __mul__(self, other):
        if isinstance(other, YRatFunc):
            merged = dict(self.linear)
            for c, k in other.linear.items():
                merged[c] = merged.get(c, 0) + k
            return YRatFunc(self.num * other.num, merged,
                            self.opaque + other.opaque)
        return YRatFunc(self.num * other, dict(self.linear), list(self.opaque))

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, YRatFunc):
            other = YRatFunc(other if isinstance(other, YPoly)
                             else YPoly([_rf(other)]))
        # Common denominator over the union of factors.
        merged = {}
        for c, k in self.linear.items():
            merged[c] = k
        for c, k in other.linear.items():
            merged[c] = max(merged.get(c, 0), k)
        def lift(f):
            extra = YPoly.const(1)
            for c, k in merged.items():
                need = k - f.linear.get(c, 0)
                for _ in range(need):
                    extra = extra * YPoly([-rat(c), 1])
            return f.num * extra
        if self.opaque or other.opaque:
            raise ValidationError("addition with opaque denominator factors "
                                  "is not supported; multiply instead")
        return YRatFunc(lift(self) + lift(other), merged)

    def __neg__(self):
        return YRatFunc(-self.num, dict(self.linear), list(self.opaque))

    def __sub__(self, other):
        if not isinstance(other, YRatFunc):
            other = YRatFunc(other if isinstance(other, YPoly)
                             else YPoly([_rf(other)]))
        return self + (-other)

    def den_expanded(self) -> YPoly:
        out = YPoly.const(1)
        for c, k in self.linear.items():
            lin = YPoly([-c, 1])
            for _ in range(k):
                out = out * lin
        for p in self.opaque:
            out = out * p
        return out

    def _cancelled_at(self, c):
        """Return (num', remaining multiplicity) after cancelling (y - c)."""
        c = rat(c)
        k = self.linear.get(c, 0)
        num = self.num
        while k > 0 and not num.is_zero():
            quo, rem = num.divide_linear(c)
            if not rem.is_zero():
                break
            num, k = quo, k - 1
        return num, k

    def pole_order(self, c) -> int:
        _, k = self._cancelled_at(c)
        return k

    def eval_xy(self, x0, y0):
        num = self.num.eval_xy(x0, y0)
        den = y0 * 0 + 1
        for c, k in self.linear.items():
            den = den * (y0 - c) ** k
        for p in self.opaque:
            den = den * p.eval_xy(x0, y0)
        return num / den


def residue_at(f: YRatFunc, c) -> RatFuncX:
    """Residue of f dy at y = c; exact over Q(x).

    Pole order is determined after cancellation; order 0 returns 0.  An
    opaque factor vanishing identically at y = c means the representation
    hides an x-independent singularity and is rejected.
    """
    c = rat(c)
    num, k = f._cancelled_at(c)
    if k == 0:
        return RatFuncX.zero()
    for p in f.opaque:
        if p.eval_y(c).is_zero():
            raise ValidationError(
                "opaque denominator factor vanishes identically at y = %s; "
                "(y - c) must be cancelled before taking residues" % c)
    # Remaining denominator with the (y - c)^k factor removed.
    if k == 1:
        scale = Fraction(1)
        for c2, k2 in f.linear.items():
            if c2 != c:
                scale *= (c - c2) ** k2
        den_val = RatFuncX(scale)
        for p in f.opaque:
            den_val = den_val * p.eval_y(c)
        return num.eval_y(c) / den_val
    # Higher order: differentiate (y-c)^k f = num / rest symbolically.
    rest = YPoly.const(1)
    for c2, k2 in f.linear.items():
        if c2 == c:
            continue
        lin = YPoly([-c2, 1])
        for _ in range(k2):
            rest = rest * lin
    for p in f.opaque:
        rest = rest * p
    n_, d_ = num, rest
    for _ in range(k - 1):
        n_, d_ = n_.derivative() * d_ - n_ * d_.derivative(), d_ * d_
    dv = d_.eval_y(c)
    if dv.is_zero():
        raise ValidationError("denominator vanishes at residue point y = %s" % c)
    return n_.eval_y(c) / dv * Fraction(1, factorial(k - 1))


def residue_at_infinity(f: YRatFunc) -> RatFuncX:
    """Minus the y^{-1} coefficient of the expansion at y = infinity.

    Only the proper part matters: after division, N'/D' contributes
    lead(N')/lead(D') iff deg N' = deg D' - 1; the result is negated.
    """
    den = f.den_expanded()
    if den.degree() <= 0:
        return RatFuncX.zero()
    _, rem = f.num.divmod(den)
    if rem.degree() == den.degree() - 1:
        return -(rem.lead() / den.lead())
    return RatFuncX.zero()
