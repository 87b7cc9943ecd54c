"""Spectral projectors and the identities tying them to the kernel.

Both projector routes live here: the adjugate of (yI - L) over the
y-derivative of the characteristic polynomial, and the outer product of
kernel columns scaled by -(x - z_o)^2.  The bidifferential and N-point
correlators are built on top and cross-checked against kernel products.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from . import linalg
from .curve import CurvePoint, SpectralData
from .errors import AssumptionError, ValidationError
from .kernel import CauchyKernel
from .reconstruction import LaxMatrix
from .series import branch_series


def _pair(p):
    if isinstance(p, CurvePoint):
        return p.x, p.y
    px, py = p
    return px, py


class Projector:
    """Rank-1 spectral projector at one curve point."""

    __slots__ = ("point", "matrix")

    def __init__(self, point, matrix):
        self.point = point
        self.matrix = matrix

    @property
    def n(self):
        return len(self.matrix)

    def trace(self):
        acc = self.matrix[0][0]
        for i in range(1, self.n):
            acc = acc + self.matrix[i][i]
        return acc


def projector(lax: LaxMatrix, point) -> Projector:
    """Adjugate route: adj(yI - L(x)) / P_y(x, y)."""
    x0, y0 = _pair(point)
    lv = lax.eval_at(x0)
    n = len(lv)
    zero = y0 * 0
    one = zero + 1
    m = [[(y0 if i == j else zero) - lv[i][j] for j in range(n)]
         for i in range(n)]
    adj = linalg.adjugate(m, zero, one)
    py = lax.char_poly().derivative().eval_xy(x0, y0)
    if isinstance(py, Fraction) and py == 0:
        raise AssumptionError(
            "eigenvalue collision: the characteristic polynomial has a "
            "double root in y at this point")
    return Projector((x0, y0), [[v / py for v in row] for row in adj])


def projector_kernel(data: SpectralData, point,
                     kern: CauchyKernel = None) -> Projector:
    """Kernel route: Pi_ab = -(x - z_o)^2 K(z_o^(a), p) K(p, z_o^(b))."""
    if kern is None:
        kern = CauchyKernel(data)
    x0, y0 = _pair(point)
    n = data.curve.n
    col = [kern.kernel(data.sheet_point(a), (x0, y0)) for a in range(n)]
    row = [kern.kernel((x0, y0), data.sheet_point(b)) for b in range(n)]
    factor = -((x0 - data.z_o) ** 2)
    mat = [[factor * col[a] * row[b] for b in range(n)] for a in range(n)]
    return Projector((x0, y0), mat)


def sheet_sum_identity(data: SpectralData, p, q,
                       kern: CauchyKernel = None) -> dict:
    """Sum over sheets of K(p, z_o^(a)) K(z_o^(a), q) against its closed form.

    The closed form is K(p, q) (z - x) / ((z_o - x)(z_o - z)) with
    x = p.x, z = q.x.  Exact for rational inputs, 1e-9 relative otherwise.
    """
    if kern is None:
        kern = CauchyKernel(data)
    px, py = _pair(p)
    qx, qy = _pair(q)
    n = data.curve.n
    lhs = None
    for a in range(n):
        zp = data.sheet_point(a)
        term = kern.kernel((px, py), zp) * kern.kernel(zp, (qx, qy))
        lhs = term if lhs is None else lhs + term
    zo = data.z_o
    rhs = kern.kernel((px, py), (qx, qy)) * (qx - px) \
        / ((zo - px) * (zo - qx))
    if isinstance(lhs, Fraction):
        ok = lhs == rhs
        err = None
    else:
        scale = max(abs(rhs), 1e-30)
        err = abs(lhs - rhs) / scale
        ok = err <= 1e-9
    return {"lhs": lhs, "rhs": rhs, "ok": ok, "rel_err": err}


def bidifferential(lax: LaxMatrix, p, q):
    """Tr(Pi(p) Pi(q)) / (x - z)^2, the dx dz coefficient of B(p, q)."""
    px, _ = _pair(p)
    qx, _ = _pair(q)
    if px == qx:
        raise ValidationError("bidifferential pole: equal x-projections")
    pp = projector(lax, p)
    pq = projector(lax, q)
    tr = _product_trace([pp.matrix, pq.matrix])
    return tr / (px - qx) ** 2


def bidifferential_check(lax: LaxMatrix, data: SpectralData, p, q,
                         kern: CauchyKernel = None) -> dict:
    """Compare the projector route with minus the two-kernel product."""
    if kern is None:
        kern = CauchyKernel(data)
    value = bidifferential(lax, p, q)
    kernel_side = -(kern.kernel(p, q) * kern.kernel(q, p))
    if isinstance(value, Fraction):
        ok = value == kernel_side
        err = None
    else:
        scale = max(abs(kernel_side), 1e-30)
        err = abs(value - kernel_side) / scale
        ok = err <= 1e-9
    return {"value": value, "kernel_side": kernel_side, "ok": ok,
            "rel_err": err}


def bidifferential_series(lax: LaxMatrix, data: SpectralData,
                          p: CurvePoint, order: int = 2):
    """(x - z)^2 B/(dx dz) along the curve at p: exact series, head 1."""
    xs, ys = branch_series(data.curve.e, p.x, p.y, order)
    pi_fixed = projector(lax, (p.x, p.y))
    pi_series = projector(lax, (xs, ys))
    tr = None
    n = pi_fixed.n
    for i in range(n):
        for j in range(n):
            term = pi_fixed.matrix[i][j] * pi_series.matrix[j][i]
            tr = term if tr is None else tr + term
    return tr


def _product_trace(mats):
    acc = mats[0]
    for m in mats[1:]:
        acc = linalg.mat_mul(acc, m)
    n = len(acc)
    tr = acc[0][0]
    for i in range(1, n):
        tr = tr + acc[i][i]
    return tr


class CorrelatorValue:
    """All three evaluations of one N-point connected correlator."""

    __slots__ = ("points", "value", "trace_fixed", "kernel_cycle")

    def __init__(self, points, value, trace_fixed, kernel_cycle):
        self.points = points
        self.value = value
        self.trace_fixed = trace_fixed
        self.kernel_cycle = kernel_cycle

    @property
    def n_points(self):
        return len(self.points)


def correlator(lax: LaxMatrix, data: SpectralData, points,
               kern: CauchyKernel = None) -> CorrelatorValue:
    """W_N over all permutations, in three forms.

    `value` orders the projector product by the permutation (this is the
    form that matches the kernel cycles term by term); `trace_fixed`
    keeps the written order of the points in the trace and permutes only
    the denominator; `kernel_cycle` is the product of kernel values
    around each permuted cycle.  All three are scaled by (-1)^N / N.
    """
    pts = [_pair(p) for p in points]
    ncount = len(pts)
    if ncount < 2:
        raise ValidationError("correlator needs at least two points")
    xs = [p[0] for p in pts]
    if len({*xs}) != ncount:
        raise ValidationError("correlator points must have distinct "
                              "x-projections")
    if kern is None:
        kern = CauchyKernel(data)
    pis = [projector(lax, p).matrix for p in pts]
    t_fixed = _product_trace(pis)
    sum_fixed = None
    sum_sigma = None
    sum_kernel = None
    for sigma in permutations(range(ncount)):
        den = None
        for k in range(ncount):
            f = xs[sigma[k]] - xs[sigma[(k + 1) % ncount]]
            den = f if den is None else den * f
        term_fixed = t_fixed / den
        term_sigma = _product_trace([pis[i] for i in sigma]) / den
        kprod = None
        for k in range(ncount):
            f = kern.kernel(pts[sigma[k]], pts[sigma[(k + 1) % ncount]])
            kprod = f if kprod is None else kprod * f
        sum_fixed = term_fixed if sum_fixed is None else sum_fixed + term_fixed
        sum_sigma = term_sigma if sum_sigma is None else sum_sigma + term_sigma
        sum_kernel = kprod if sum_kernel is None else sum_kernel + kprod
    scale = Fraction((-1) ** ncount, ncount)
    return CorrelatorValue([tuple(p) for p in pts],
                           scale * sum_sigma,
                           scale * sum_fixed,
                           scale * sum_kernel)
