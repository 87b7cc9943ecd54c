"""The rational Cauchy kernel of a spectral curve with divisor data.

Everything here is built from one third-kind seed differential Omega
with simple poles at q (+1) and p_o (-1), corrected by holomorphic
differentials so the result vanishes at the divisor points.  Scalar
evaluation is duck-typed (Fraction, complex, truncated series); the
symbolic forms fix one slot at a rational point and return the exact
y-rational function of the other slot that the residue engine consumes.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .curve import CurvePoint, SpectralData
from .errors import (BranchPointError, NonGenericError, SpecialDivisorError,
                     ValidationError)
from .qpoly import BiPoly, UniPoly, power_divided_difference, rat_str
from .ratfunc import RatFuncX
from .series import LaurentSeries, branch_series
from .yfunc import YPoly, YRatFunc


def _pair(p):
    if isinstance(p, CurvePoint):
        return p.x, p.y
    px, py = p
    return px, py


def _dd_poly(poly: UniPoly, u, v):
    """(poly(u) - poly(v)) / (u - v), duck-typed, no division."""
    acc = None
    for k, c in enumerate(poly.coeffs):
        if k == 0 or c == 0:
            continue
        term = c * power_divided_difference(u, v, k)
        acc = term if acc is None else acc + term
    if acc is None:
        return u * 0
    return acc


def _inv_linear(c) -> RatFuncX:
    """1 / (x - c) as a rational function of x."""
    return RatFuncX(UniPoly([1], "x"), UniPoly([-c, 1], "x"))


def _require_separated(pv, qv, label, coord):
    """Exact seed inputs must not share the expansion coordinate.

    The removable coincidences are handled by the series route, so only
    exact rational collisions are rejected here; floats, complex values
    and series pass through untouched.
    """
    if isinstance(pv, Fraction) and isinstance(qv, Fraction) and pv == qv:
        raise NonGenericError(
            "seed value needs p and %s separated in %s; expand along the "
            "branch for a coincident %s" % (label, coord, coord),
            value=rat_str(pv))


def brill_noether_matrix(data: SpectralData):
    """Rows indexed by divisor points, columns by basis exponents."""
    exps = data.curve.basis_exponents()
    return [[d.x ** a1 * d.y ** a2 for (a1, a2) in exps] for d in data.divisor]


class CauchyKernel:
    """Kernel evaluations and symbolic slices for one data set."""

    def __init__(self, data: SpectralData):
        self.data = data
        self.curve = data.curve
        self.orientation = data.orientation
        self.exponents = self.curve.basis_exponents()
        g = self.curve.genus()
        if len(self.exponents) != g:
            raise ValidationError(
                "basis exponent count %d does not match genus %d"
                % (len(self.exponents), g))
        if g:
            delta = brill_noether_matrix(data)
            det, adj = linalg.det_adjugate(delta, Fraction(0), Fraction(1))
            if det == 0:
                raise SpecialDivisorError(
                    "the divisor is special: its Brill-Noether matrix is "
                    "singular")
            self.delta = delta
            self.delta_inv = [[v / det for v in row] for row in adj]
        else:
            self.delta = []
            self.delta_inv = []
        self._sym_q_cache = {}
        self._sym_p_cache = {}

    # -- scalar evaluation ------------------------------------------------

    def omega(self, p, q, base=None):
        """Seed value Omega(p; q, base); base defaults to p_o.

        The x-oriented seed mirrors the y-oriented one with the roles of
        the variables swapped, which trivializes the kernel differential
        by dy instead of dx.  On the curve dy = -(E_x/E_y) dx and the
        corrected numerators come out as exact negatives, so the x seed
        carries a global minus to keep every kernel value dx-trivialized.
        """
        if base is None:
            base = (self.data.p_o.x, self.data.p_o.y)
        if self.orientation == "y":
            return self._omega_y(_pair(p), _pair(q), _pair(base))
        return -self._omega_x(_pair(p), _pair(q), _pair(base))

    def _fiber_dd_y(self, z, w, y):
        """E(z, y') with the root y' = w divided out: sum a_j(z) pdd(y, w, j)."""
        acc = None
        for j in range(1, self.curve.n + 1):
            aj = self.curve.a(j)
            if aj.is_zero():
                continue
            term = aj(z) * power_divided_difference(y, w, j)
            acc = term if acc is None else acc + term
        return acc

    def _fiber_dd_x(self, w, z, x):
        acc = None
        for i in range(1, self.curve.m + 1):
            bi = self.curve.b(i)
            if bi.is_zero():
                continue
            term = bi(w) * power_divided_difference(x, z, i)
            acc = term if acc is None else acc + term
        return acc

    def _omega_y(self, p, q, base):
        px, py = p
        qx, qy = q
        bx, by = base
        _require_separated(px, qx, "q", "x")
        _require_separated(px, bx, "the base point", "x")
        n = self.curve.n
        an = self.curve.a(n)
        t1 = self._fiber_dd_y(qx, qy, py) / (px - qx)
        t2 = self._fiber_dd_y(bx, by, py) / (px - bx)
        t3 = _dd_poly(an, qx, px) - _dd_poly(an, bx, px)
        return t1 - t2 + py ** (n - 1) * t3

    def _omega_x(self, p, q, base):
        px, py = p
        qx, qy = q
        bx, by = base
        _require_separated(py, qy, "q", "y")
        _require_separated(py, by, "the base point", "y")
        m = self.curve.m
        bm = self.curve.b(m)
        t1 = self._fiber_dd_x(qy, qx, px) / (py - qy)
        t2 = self._fiber_dd_x(by, bx, px) / (py - by)
        t3 = _dd_poly(bm, qy, py) - _dd_poly(bm, by, py)
        return t1 - t2 + px ** (m - 1) * t3

    def q_coefficients(self, q, base=None):
        """Holomorphic-correction coefficients, one per basis exponent."""
        if not self.exponents:
            return []
        seeds = [self.omega((d.x, d.y), q, base) for d in self.data.divisor]
        out = []
        for row in self.delta_inv:
            acc = None
            for coef, val in zip(row, seeds):
                term = coef * val
                acc = term if acc is None else acc + term
            out.append(acc)
        return out

    def q_value(self, p, q):
        """Q(p; q): the seed minus the divisor-vanishing correction."""
        px, py = _pair(p)
        acc = self.omega(p, q)
        if self.exponents:
            qc = self.q_coefficients(q)
            for (a1, a2), coef in zip(self.exponents, qc):
                acc = acc - coef * (px ** a1 * py ** a2)
        return acc

    def kernel(self, p, q):
        """K(p, q) = Q(p; q) / E_y(p), the dx-trivialized kernel value."""
        px, py = _pair(p)
        qx, qy = _pair(q)
        if isinstance(px, Fraction) and isinstance(qx, Fraction):
            if px == qx and py == qy:
                raise ValidationError("kernel pole: p = q")
            if px == self.data.p_o.x and py == self.data.p_o.y:
                raise ValidationError("kernel pole: p = p_o")
        ey = self.curve.e_y(px, py)
        if isinstance(px, Fraction) and ey == 0:
            raise BranchPointError(
                "kernel undefined where E_y vanishes",
                point={"x": rat_str(px), "y": rat_str(py)})
        return self.q_value(p, q) / ey

    # -- symbolic slices --------------------------------------------------

    def omega_symbolic_q(self, at: CurvePoint) -> YRatFunc:
        """Omega(at; q, p_o) as a y-rational function of symbolic q."""
        key = (at.x, at.y)
        if key in self._sym_q_cache:
            return self._sym_q_cache[key]
        out = (self._omega_sym_q_y(at) if self.orientation == "y"
               else -self._omega_sym_q_x(at))
        self._sym_q_cache[key] = out
        return out

    def _omega_sym_q_y(self, at: CurvePoint) -> YRatFunc:
        curve = self.curve
        bx, by = self.data.p_o.x, self.data.p_o.y
        n = curve.n
        an = curve.a(n)
        h = curve.e.slice_y(at.y).shift_out_root(at.x)
        out = YRatFunc(YPoly.const(RatFuncX(h)), {at.y: 1})
        k2 = curve.e(bx, at.y) / ((at.x - bx) * (at.y - by))
        k3 = (an(bx) - an(at.x)) / (bx - at.x)
        rest = (an.divided_difference(at.x) - k3) * at.y ** (n - 1) - k2
        return out + YRatFunc(YPoly.const(RatFuncX(rest)))

    def _omega_sym_q_x(self, at: CurvePoint) -> YRatFunc:
        curve = self.curve
        bx, by = self.data.p_o.x, self.data.p_o.y
        m = curve.m
        bm = curve.b(m)
        pq = curve.e.slice_x(at.x).shift_out_root(at.y)
        t1 = YPoly.from_unipoly_y(pq) * _inv_linear(at.x)
        k2 = curve.e(at.x, by) / ((at.x - bx) * (at.y - by))
        k3 = (bm(by) - bm(at.y)) / (by - at.y)
        rest = YPoly.from_unipoly_y(bm.divided_difference(at.y) - k3) \
            * at.x ** (m - 1)
        return YRatFunc(t1 - k2 + rest)

    def symbolic_q(self, p0: CurvePoint) -> YRatFunc:
        """Q(p0; q) as an exact function of symbolic q = (x, y)."""
        out = self.omega_symbolic_q(p0)
        if self.exponents:
            weights = self._monomial_weights(p0)
            for w, d in zip(weights, self.data.divisor):
                if w:
                    out = out - self.omega_symbolic_q(d) * w
        return out

    def _monomial_weights(self, p0: CurvePoint):
        """m_l = sum_alpha p0^alpha (delta^-1)_{alpha l}."""
        monos = [p0.x ** a1 * p0.y ** a2 for (a1, a2) in self.exponents]
        out = []
        for l in range(len(self.data.divisor)):
            acc = Fraction(0)
            for idx in range(len(monos)):
                acc += monos[idx] * self.delta_inv[idx][l]
            out.append(acc)
        return out

    def omega_symbolic_p(self, q0: CurvePoint) -> YRatFunc:
        """Omega(p; q0, p_o) as a function of symbolic p = (x, y)."""
        return (self._omega_sym_p_y(q0) if self.orientation == "y"
                else -self._omega_sym_p_x(q0))

    def _omega_sym_p_y(self, q0: CurvePoint) -> YRatFunc:
        curve = self.curve
        bx, by = self.data.p_o.x, self.data.p_o.y
        n = curve.n
        an = curve.a(n)
        pp = curve.e.slice_x(q0.x).shift_out_root(q0.y)
        po = curve.e.slice_x(bx).shift_out_root(by)
        t1 = YPoly.from_unipoly_y(pp) * _inv_linear(q0.x)
        t2 = YPoly.from_unipoly_y(po) * _inv_linear(bx)
        dd = an.divided_difference(q0.x) - an.divided_difference(bx)
        t3 = YPoly([RatFuncX.zero()] * (n - 1) + [RatFuncX(dd)]) \
            if not dd.is_zero() else YPoly()
        return YRatFunc(t1 - t2 + t3)

    def _omega_sym_p_x(self, q0: CurvePoint) -> YRatFunc:
        curve = self.curve
        bx, by = self.data.p_o.x, self.data.p_o.y
        m = curve.m
        bm = curve.b(m)
        g1 = curve.e.slice_y(q0.y).shift_out_root(q0.x)
        go = curve.e.slice_y(by).shift_out_root(bx)
        out = (YRatFunc(YPoly.const(RatFuncX(g1)), {q0.y: 1})
               - YRatFunc(YPoly.const(RatFuncX(go)), {by: 1}))
        dd = bm.divided_difference(q0.y) - bm.divided_difference(by)
        xmono = RatFuncX(UniPoly([0] * (m - 1) + [1], "x"))
        t3 = YPoly.from_unipoly_y(dd) * xmono
        return out + YRatFunc(t3)

    def symbolic_p(self, q0: CurvePoint) -> YRatFunc:
        """Q(p; q0) as an exact function of symbolic p = (x, y)."""
        key = (q0.x, q0.y)
        if key in self._sym_p_cache:
            return self._sym_p_cache[key]
        out = self.omega_symbolic_p(q0)
        if self.exponents:
            qc = self.q_coefficients((q0.x, q0.y))
            by_deg = {}
            for (a1, a2), coef in zip(self.exponents, qc):
                if coef == 0:
                    continue
                mono = UniPoly([0] * a1 + [coef], "x")
                by_deg[a2] = by_deg.get(a2, UniPoly([], "x")) + mono
            if by_deg:
                size = max(by_deg) + 1
                corr = YPoly([RatFuncX(by_deg.get(j, UniPoly([], "x")))
                              for j in range(size)])
                out = out - YRatFunc(corr)
        self._sym_p_cache[key] = out
        return out

    def kernel_symbolic_q(self, p0: CurvePoint) -> YRatFunc:
        """K(p0, q) in symbolic q: Q(p0; q) over the scalar E_y(p0)."""
        ey = self.curve.e_y(p0.x, p0.y)
        if ey == 0:
            raise BranchPointError("kernel slice at a y-branch point")
        return self.symbolic_q(p0) * (Fraction(1) / ey)

    def kernel_symbolic_p(self, q0: CurvePoint) -> YRatFunc:
        """K(p, q0) in symbolic p; E_y(x, y) rides along as an opaque factor."""
        base = self.symbolic_p(q0)
        ey_poly = YPoly.from_bipoly(self.curve.e_y)
        return YRatFunc(base.num, dict(base.linear),
                        list(base.opaque) + [ey_poly])

    # -- differentials ----------------------------------------------------

    def holomorphic_diffs(self):
        """Numerators N_j with omega_j = N_j dx / E_y; N_j(d_l) = delta_jl E_y(d_l)."""
        out = []
        for j, d in enumerate(self.data.divisor):
            scale = self.curve.e_y(d.x, d.y)
            terms = {}
            for idx, (a1, a2) in enumerate(self.exponents):
                c = self.delta_inv[idx][j] * scale
                if c:
                    terms[(a1, a2)] = c
            out.append(BiPoly(terms))
        return out

    def second_kind(self, k: int, p):
        """eta_k at p: the u^k coefficient of Q(p; q(u)) at q -> p_o, over E_y(p).

        p may be a rational pair or a pair of truncated series (for
        principal-part checks); series inputs are lifted so the two
        expansion parameters never mix.
        """
        if k < 1:
            raise ValidationError("second-kind index must be >= 1")
        px, py = _pair(p)
        xs, ys = branch_series(self.curve.e, self.data.p_o.x,
                               self.data.p_o.y, k + 1)
        if isinstance(px, LaurentSeries):
            lifted = (LaurentSeries.scalar(px), LaurentSeries.scalar(py))
        else:
            lifted = (px, py)
        f = self.q_value(lifted, (xs, ys))
        c = f.coefficient(k)
        return c / self.curve.e_y(px, py)

    def verify_second_kind(self, k: int, order: int = None) -> dict:
        """Principal part of eta_k along the curve at p_o.

        eta_k must have a pole of order k + 1 with leading coefficient
        exactly 1 and no residue term.
        """
        if order is None:
            order = k + 3
        xs, ys = branch_series(self.curve.e, self.data.p_o.x,
                               self.data.p_o.y, order)
        eta = self.second_kind(k, (xs, ys))
        val = eta.valuation()
        lead = eta.coefficient(val) if val is not None else Fraction(0)
        residue = (eta.coefficient(-1) if val is not None and val <= -1
                   else Fraction(0))
        return {
            "k": k,
            "pole_order": -val if val is not None else 0,
            "leading": rat_str(lead),
            "residue": rat_str(residue),
            "ok": val == -(k + 1) and lead == 1 and residue == 0,
        }

    def transition_function(self, l: int, m: int, p):
        """F_{l,m}(p) = K(z_o^(m), p) / K(z_o^(l), p)."""
        pm = self.data.sheet_point(m)
        pl = self.data.sheet_point(l)
        num = self.q_value((pm.x, pm.y), p) / self.curve.e_y(pm.x, pm.y)
        den = self.q_value((pl.x, pl.y), p) / self.curve.e_y(pl.x, pl.y)
        return num / den

    # -- residue normalization --------------------------------------------

    def verify_residues(self, q0: CurvePoint, order: int = 3) -> dict:
        """Expand K(p, q0) dx along the curve at q0 and at p_o.

        The residue must be exactly +1 at p = q0 and -1 at p = p_o.
        """
        self.curve.require_on_curve(q0, "residue sample point")
        curve = self.curve
        xs, ys = branch_series(curve.e, q0.x, q0.y, order)
        at_q = self.q_value((xs, ys), (q0.x, q0.y)) / curve.e_y(xs, ys)
        xs2, ys2 = branch_series(curve.e, self.data.p_o.x,
                                 self.data.p_o.y, order)
        at_base = self.q_value((xs2, ys2), (q0.x, q0.y)) / curve.e_y(xs2, ys2)
        res_q = at_q.coefficient(-1)
        res_base = at_base.coefficient(-1)
        return {
            "at_q": {"residue": rat_str(res_q),
                     "pole_order": -(at_q.valuation() or 0),
                     "ok": at_q.valuation() == -1 and res_q == 1},
            "at_base": {"residue": rat_str(res_base),
                        "pole_order": -(at_base.valuation() or 0),
                        "ok": at_base.valuation() == -1 and res_base == -1},
        }


def omega_eval(data: SpectralData, p, q, base=None):
    """Module-level seed evaluation for one-off use."""
    return CauchyKernel(data).omega(p, q, base)
