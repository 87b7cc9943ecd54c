"""Truncated Laurent series in one local parameter.

Coefficients are duck-typed: exact Fraction for identity checks, complex
for numeric sanity passes.  Precision is absolute (coefficients are known
for exponents below `prec`); exact scalars coerce with infinite precision.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BranchPointError, ValidationError
from .qpoly import BiPoly


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_prec(p, d):
    return None if p is None else p + d


class LaurentSeries:
    """coeffs[k] multiplies u^(val + k); exponents >= prec are unknown."""

    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, coeffs, val=0, prec=None):
        cs = list(coeffs)
        if prec is not None:
            cs = cs[:max(prec - val, 0)]
        while cs and cs[0] == 0:
            cs.pop(0)
            val += 1
        while cs and cs[-1] == 0 and prec is None:
            cs.pop()
        if not cs:
            val = prec if prec is not None else 0
        self.val = val
        self.coeffs = cs
        self.prec = prec

    @classmethod
    def scalar(cls, c, prec=None):
        return cls([c], 0, prec)

    @classmethod
    def generator(cls, prec=None):
        return cls([1], 1, prec)

    @classmethod
    def zero(cls, prec=None):
        return cls([], 0, prec)

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, e):
        if self.prec is not None and e >= self.prec:
            raise ValidationError("coefficient of u^%d is beyond precision %d"
                                  % (e, self.prec))
        k = e - self.val
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def valuation(self):
        return None if self.is_zero() else self.val

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (int, Fraction, float, complex)):
            return LaurentSeries([other], 0, None)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = _min_prec(self.prec, other.prec)
        if self.is_zero():
            return LaurentSeries(other.coeffs, other.val, prec)
        if other.is_zero():
            return LaurentSeries(self.coeffs, self.val, prec)
        val = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        if prec is not None:
            hi = min(hi, prec)
        out = []
        for e in range(val, hi):
            a = self.coeffs[e - self.val] if 0 <= e - self.val < len(self.coeffs) else 0
            b = other.coeffs[e - other.val] if 0 <= e - other.val < len(other.coeffs) else 0
            out.append(a + b)
        return LaurentSeries(out, val, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.val, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            prec = _min_prec(_add_prec(self.prec, other.val),
                             _add_prec(other.prec, self.val))
            return LaurentSeries.zero(prec)
        val = self.val + other.val
        prec = _min_prec(_add_prec(self.prec, other.val),
                         _add_prec(other.prec, self.val))
        n = len(self.coeffs) + len(other.coeffs) - 1
        if prec is not None:
            n = min(n, prec - val)
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a == 0 or i >= n:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j < n:
                    out[i + j] = out[i + j] + a * b
        return LaurentSeries(out, val, prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverting a series that is zero to "
                                    "working precision")
        a = self.coeffs
        n = len(a) if self.prec is None else self.prec - self.val
        n = max(n, 1)
        a0 = Fraction(a[0]) if isinstance(a[0], int) else a[0]
        inv0 = Fraction(1) / a0 if isinstance(a0, Fraction) else 1 / a0
        out = [inv0]
        for k in range(1, n):
            s = 0
            for j in range(1, min(k, len(a) - 1) + 1):
                s = s + a[j] * out[k - j]
            out.append(-inv0 * s)
        prec = None if self.prec is None else self.prec - 2 * self.val
        return LaurentSeries(out, -self.val, prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return LaurentSeries.scalar(1, None)
        out = None
        base = self
        while k:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def truncate(self, prec):
        return LaurentSeries(self.coeffs, self.val, _min_prec(self.prec, prec))

    def to_text(self):
        if self.is_zero():
            return "O(u^%s)" % self.prec if self.prec is not None else "0"
        chunks = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.val + k
            mono = "1" if e == 0 else ("u" if e == 1 else "u^%d" % e)
            chunks.append("(%s)*%s" % (c, mono))
        tail = " + O(u^%d)" % self.prec if self.prec is not None else ""
        return " + ".join(chunks) + tail

    def __repr__(self):
        return "LaurentSeries(%s)" % self.to_text()


def branch_series(e: BiPoly, x0, y0, order: int):
    """Exact series of the curve branch through (x0, y0).

    Returns (xs, ys) with xs = x0 + u and ys = y0 + O(u) satisfying
    e(xs, ys) = O(u^(order + 1)); requires e_y(x0, y0) != 0.
    """
    if order < 1:
        raise ValidationError("series order must be at least 1")
    prec = order + 1
    ey = e.derivative_y()
    if not _nonzero(ey(x0, y0)):
        raise BranchPointError(
            "branch series needs a simple sheet: e_y vanishes at the "
            "expansion point", point={"x": str(x0), "y": str(y0)})
    u = LaurentSeries.generator(prec)
    xs = u + x0
    ys = LaurentSeries.scalar(y0, prec)
    # Newton iteration doubles the number of correct coefficients.
    steps = 1
    while (1 << steps) < prec:
        steps += 1
    for _ in range(steps + 1):
        ys = ys - e(xs, ys) / ey(xs, ys)
    return xs, ys


def _nonzero(v):
    return v != 0
