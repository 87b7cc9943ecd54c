"""Exact univariate and bivariate polynomials over the rationals.

UniPoly stores ascending coefficients (Fraction) plus a variable tag;
BiPoly stores a sparse {(i, j): Fraction} term map for x^i y^j.  All
arithmetic is exact.  Evaluation is duck-typed Horner, so the same
polynomial objects evaluate at Fraction, complex, or truncated-series
arguments.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import DegenerateInputError, ValidationError


def rat(v) -> Fraction:
    """Coerce int / str 'p/q' / Fraction to Fraction."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, float):
        raise ValidationError("refusing float %r in exact context" % (v,))
    raise ValidationError("cannot interpret %r as a rational" % (v,))


def rat_str(v: Fraction) -> str:
    """Canonical 'p/q' (q > 0 implied by Fraction) or plain integer string."""
    return str(v)


class UniPoly:
    """Dense univariate polynomial; coefficients ascending by degree."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="x"):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs
        self.var = var

    @classmethod
    def const(cls, c, var="x"):
        return cls([rat(c)], var)

    @classmethod
    def variable(cls, var="x"):
        return cls([0, 1], var)

    # NOTE: degree of the zero polynomial is -1 by convention here.
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __getitem__(self, k) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, tuple(self.coeffs)))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] - other[k] for k in range(n)], self.var)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __radd__(self, other):
        return self.__add__(other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other], self.var)
        raise TypeError("cannot combine UniPoly with %r" % (other,))

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, v):
        """Horner evaluation; v may be Fraction, complex, series, ..."""
        if not self.coeffs:
            return v * 0
        acc = v * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * v + c
        return acc

    def derivative(self):
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs], self.var)

    def divmod(self, other):
        """Polynomial division with remainder (field coefficients)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dl = other.degree()
        lead = other.coeffs[-1]
        if self.degree() < dl:
            return UniPoly([], self.var), UniPoly(rem, self.var)
        quo = [Fraction(0)] * (self.degree() - dl + 1)
        for k in range(len(quo) - 1, -1, -1):
            c = rem[k + dl] / lead
            quo[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quo, self.var), UniPoly(rem[:dl], self.var)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValidationError("polynomial division left a remainder")
        return q

    def divide_linear(self, root):
        """Synthetic division by (v - root); returns (quotient, remainder)."""
        root = rat(root)
        if self.is_zero():
            return UniPoly([], self.var), Fraction(0)
        quo = [Fraction(0)] * self.degree()
        acc = Fraction(0)
        for k in range(self.degree(), 0, -1):
            acc = acc * root + self.coeffs[k]
            quo[k - 1] = acc
        rem = acc * root + self.coeffs[0]
        return UniPoly(quo, self.var), rem

    def shift_out_root(self, root):
        """Exact quotient by (v - root); errors if root is not a root."""
        quo, rem = self.divide_linear(root)
        if rem != 0:
            raise ValidationError(
                "exact division by (%s - %s) left remainder %s"
                % (self.var, root, rem))
        return quo

    def divided_difference(self, c):
        """(p(v) - p(c)) / (v - c) as a polynomial in v, for scalar c."""
        # p(v) - p(c) has c as a root, so the synthetic quotient is exact.
        shifted = self - UniPoly.const(self(rat(c)), self.var)
        return shifted.shift_out_root(c)

    def to_text(self):
        return _poly_text({(k,): c for k, c in enumerate(self.coeffs) if c != 0},
                          (self.var,))

    def __repr__(self):
        return "UniPoly(%s)" % (self.to_text() or "0")


def exact_divide_linear(p: UniPoly, root) -> UniPoly:
    """Spec-facing alias: quotient of p by (v - root) with zero remainder."""
    return p.shift_out_root(root)


def gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm over Q."""
    a, b = f, g
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.monic()


def lcm(f: UniPoly, g: UniPoly) -> UniPoly:
    if f.is_zero() or g.is_zero():
        return UniPoly([], f.var)
    return (f * g).exact_div(gcd(f, g)).monic()


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Sylvester resultant of two polynomials in the same variable."""
    if f.var != g.var:
        raise ValidationError("resultant needs both polynomials in the same variable")
    if f.is_zero() and g.is_zero():
        raise DegenerateInputError("resultant of two zero polynomials")
    df, dg = f.degree(), g.degree()
    if df < 0 or dg < 0:
        # One operand is zero: resultant vanishes unless the other is a
        # nonzero constant, in which case it is an empty product = 1.
        other = g if f.is_zero() else f
        return Fraction(1) if other.degree() == 0 else Fraction(0)
    if df == 0 and dg == 0:
        return Fraction(1)
    if df == 0:
        return f.lead() ** dg
    if dg == 0:
        return g.lead() ** df
    n = df + dg
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(dg):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (n - df - 1 - i))
    for i in range(df):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (n - dg - 1 - i))
    return linalg.bareiss_det(rows, Fraction(0), Fraction(1))


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(p: UniPoly):
    """All rational roots with multiplicities, plus a completeness flag.

    Returns (roots, complete) where roots is a list of (Fraction, mult)
    sorted by value and complete is True iff the multiplicities sum to
    deg p (i.e. p splits over Q up to a constant).
    """
    if p.is_zero():
        raise DegenerateInputError("rational_roots of the zero polynomial")
    # Strip powers of v dividing p: each contributes a root at 0.
    coeffs = list(p.coeffs)
    zero_mult = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        zero_mult += 1
    work = UniPoly(coeffs, p.var)
    found = {}
    if zero_mult:
        found[Fraction(0)] = zero_mult
    if work.degree() > 0:
        # Clear denominators to integer coefficients for the root theorem.
        denom_lcm = 1
        for c in work.coeffs:
            denom_lcm = denom_lcm * c.denominator // _gcd_int(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in work.coeffs]
        content = 0
        for v in ints:
            content = _gcd_int(content, v)
        ints = [v // content for v in ints]
        candidates = set()
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                candidates.add(Fraction(num, den))
                candidates.add(Fraction(-num, den))
        for cand in sorted(candidates):
            while True:
                quo, rem = work.divide_linear(cand)
                if rem != 0 or work.degree() < 1:
                    break
                found[cand] = found.get(cand, 0) + 1
                work = quo
    total = sum(found.values())
    roots = sorted(found.items())
    return roots, total == p.degree()


def _gcd_int(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def power_divided_difference(u, v, j: int):
    """(u^j - v^j)/(u - v) = sum_{i<j} u^i v^(j-1-i), duck-typed.

    Horner form: (((u + v)u + v^2)u + v^3)... keeps it at 2(j-1) mults.
    """
    zero = u * 0
    if j <= 0:
        return zero
    acc = zero + 1
    vpow = zero + 1
    for _ in range(j - 1):
        vpow = vpow * v
        acc = acc * u + vpow
    return acc


class BiPoly:
    """Sparse bivariate polynomial in x, y over Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                c = rat(c)
                if c == 0:
                    continue
                i, j = key
                if i < 0 or j < 0:
                    raise ValidationError("negative exponent in polynomial term")
                k = (int(i), int(j))
                data[k] = data.get(k, Fraction(0)) + c
                if data[k] == 0:
                    del data[k]
        self.terms = data

    @classmethod
    def const(cls, c):
        return cls({(0, 0): rat(c)})

    @classmethod
    def var_x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def var_y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def from_unipoly(cls, p: UniPoly):
        if p.var == "x":
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)})
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    def is_zero(self):
        return not self.terms

    def support(self):
        return set(self.terms)

    def deg_x(self):
        return max((i for i, _ in self.terms), default=-1)

    def deg_y(self):
        return max((j for _, j in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return BiPoly(out)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.const(other)
        if isinstance(other, UniPoly):
            return BiPoly.from_unipoly(other)
        raise TypeError("cannot combine BiPoly with %r" % (other,))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = BiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x, y):
        """Evaluate at duck-typed scalars (Fraction, complex, series)."""
        zero = x * 0
        # Horner in y with inner Horner in x keeps operation counts low.
        by_j = {}
        for (i, j), c in self.terms.items():
            by_j.setdefault(j, {})[i] = c
        if not by_j:
            return zero
        acc = zero
        for j in range(max(by_j), -1, -1):
            acc = acc * y
            row = by_j.get(j)
            if row:
                inner = zero
                for i in range(max(row), -1, -1):
                    inner = inner * x
                    if i in row:
                        inner = inner + row[i]
                acc = acc + inner
        return acc

    def coeffs_in_y(self):
        """List [a_0(x), ..., a_n(x)] with E = sum a_j(x) y^j."""
        n = self.deg_y()
        rows = [{} for _ in range(n + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        out = []
        for row in rows:
            size = max(row, default=-1) + 1
            out.append(UniPoly([row.get(i, 0) for i in range(size)], "x"))
        return out

    def coeffs_in_x(self):
        """List [b_0(y), ..., b_m(y)] with E = sum b_i(y) x^i."""
        m = self.deg_x()
        cols = [{} for _ in range(m + 1)]
        for (i, j), c in self.terms.items():
            cols[i][j] = c
        out = []
        for col in cols:
            size = max(col, default=-1) + 1
            out.append(UniPoly([col.get(j, 0) for j in range(size)], "y"))
        return out

    def derivative_x(self):
        return BiPoly({(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def derivative_y(self):
        return BiPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def swap_vars(self):
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def slice_x(self, x0) -> UniPoly:
        """E(x0, y) as a UniPoly in y."""
        x0 = rat(x0)
        out = {}
        for (i, j), c in self.terms.items():
            out[j] = out.get(j, Fraction(0)) + c * x0 ** i
        size = max(out, default=-1) + 1
        return UniPoly([out.get(j, 0) for j in range(size)], "y")

    def slice_y(self, y0) -> UniPoly:
        """E(x, y0) as a UniPoly in x."""
        y0 = rat(y0)
        out = {}
        for (i, j), c in self.terms.items():
            out[i] = out.get(i, Fraction(0)) + c * y0 ** j
        size = max(out, default=-1) + 1
        return UniPoly([out.get(i, 0) for i in range(size)], "x")

    def to_text(self):
        return _poly_text(self.terms, ("x", "y"))

    def __repr__(self):
        return "BiPoly(%s)" % (self.to_text() or "0")


def _poly_text(terms, vars_):
    """Canonical text form; terms sorted by descending exponent tuple."""
    if not terms:
        return "0"
    chunks = []
    for key in sorted(terms, key=lambda k: tuple(-e for e in k)):
        c = terms[key]
        parts = []
        if c == -1 and any(key):
            sign = "-"
        elif c < 0:
            sign = "-"
            parts.append(rat_str(-c))
        else:
            sign = "+"
            if c != 1 or not any(key):
                parts.append(rat_str(c))
        for var, e in zip(vars_, key):
            if e == 1:
                parts.append(var)
            elif e > 1:
                parts.append("%s^%d" % (var, e))
        term = "*".join(parts) if parts else "1"
        if not chunks:
            chunks.append(term if sign == "+" else "-" + term)
        else:
            chunks.append(("+ " if sign == "+" else "- ") + term)
    return " ".join(chunks)
