"""Residue-formula reconstruction of the Lax matrix and its verifiers.

The entry formula sums finite residues plus the residue at infinity of
SymQ(z_o^(a)) * y * SymP(z_o^(b)) / E(x, y) over the catalogued y-points,
scaled by (x - z_o)^2 / E_y(z_o^(a)).  The same engine with the target
divisor's kernel in the first slot (and no y factor) yields the change
of divisor matrix P.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import linalg
from .curve import Divisor, SpectralData
from .errors import ValidationError
from .kernel import CauchyKernel
from .qpoly import UniPoly, gcd, rat, rat_str
from .ratfunc import RatFuncX
from .yfunc import YPoly, YRatFunc, residue_at, residue_at_infinity


def _thread_count() -> int:
    raw = os.environ.get("SPECTRAL_FORGE_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(n, 1)


def _map_entries(fn, jobs):
    workers = _thread_count()
    if workers == 1:
        return [fn(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


class LaxMatrix:
    """n x n rational-function matrix, plus the symbolic char poly."""

    __slots__ = ("entries", "data", "_char")

    def __init__(self, entries, data: SpectralData = None):
        self.entries = entries
        self.data = data
        self._char = None

    @property
    def n(self):
        return len(self.entries)

    def entry(self, a, b) -> RatFuncX:
        return self.entries[a][b]

    def eval_at(self, x0):
        return [[e(x0) for e in row] for row in self.entries]

    def char_poly(self) -> YPoly:
        """det(yI - L(x)) as a monic y-polynomial over Q(x)."""
        if self._char is None:
            n = self.n
            mat = []
            for i in range(n):
                row = []
                for j in range(n):
                    if i == j:
                        row.append(YPoly([-self.entries[i][j], RatFuncX.one()]))
                    else:
                        row.append(YPoly([-self.entries[i][j]]))
                mat.append(row)
            self._char = linalg.bareiss_det(
                mat, YPoly(), YPoly.const(1),
                exact_div=lambda u, v: u.exact_div(v),
                is_zero=lambda v: v.is_zero())
        return self._char

    def to_jsonable(self):
        return [[ratfunc_jsonable(e) for e in row] for row in self.entries]


def ratfunc_jsonable(f: RatFuncX):
    return {
        "num": [rat_str(c) for c in f.num.coeffs],
        "den": [rat_str(c) for c in f.den.coeffs],
        "text": f.to_text(),
    }


def ratfunc_from_jsonable(obj) -> RatFuncX:
    try:
        num = UniPoly([rat(c) for c in obj["num"]], "x")
        den = UniPoly([rat(c) for c in obj["den"]], "x")
    except (KeyError, TypeError) as exc:
        raise ValidationError("matrix entry must carry num/den coefficient "
                              "lists: %r" % (obj,)) from exc
    return RatFuncX(num, den)


def lax_from_jsonable(rows, data: SpectralData = None) -> LaxMatrix:
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValidationError("matrix file does not hold a square matrix")
    return LaxMatrix([[ratfunc_from_jsonable(e) for e in row] for row in rows],
                     data)


def _residue_points(data: SpectralData, divisors_for_poles, a, b):
    pts = []
    for divisor in divisors_for_poles:
        for d in divisor:
            pts.append(d.y)
    pts.append(data.p_o.y)
    pts.append(data.sheet_y[a])
    pts.append(data.sheet_y[b])
    seen = set()
    out = []
    for c in pts:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _assemble(data, kern_first, kern_second, include_y, extra_points=None):
    """Common residue assembly for reconstruct and change_divisor.

    Entry (a, b) pairs the first-slot form at z_o^(a) with the
    second-slot form at z_o^(b); the 1/E_y scale follows the first slot.
    """
    curve = data.curve
    n = curve.n
    e_poly = YPoly.from_bipoly(curve.e)
    pref = RatFuncX(UniPoly([-data.z_o, 1], "x") ** 2)
    y_var = YPoly.variable()
    sym_first = [kern_first.symbolic_q(kern_first.data.sheet_point(c))
                 for c in range(n)]
    sym_second = [kern_second.symbolic_p(kern_second.data.sheet_point(c))
                  for c in range(n)]
    pole_divisors = (kern_first.data.divisor, kern_second.data.divisor)

    def one_entry(ab):
        a, b = ab
        integrand = sym_first[a]
        if include_y:
            integrand = integrand * y_var
        integrand = integrand * sym_second[b]
        integrand = YRatFunc(integrand.num, dict(integrand.linear),
                             list(integrand.opaque) + [e_poly])
        pts = _residue_points(data, pole_divisors, a, b)
        for c in extra_points or ():
            c = rat(c)
            if c not in pts:
                pts.append(c)
        total = RatFuncX.zero()
        for c in pts:
            total = total + residue_at(integrand, c)
        total = total + residue_at_infinity(integrand)
        scale = Fraction(1) / curve.e_y(data.z_o, data.sheet_y[a])
        return total * pref * scale

    jobs = [(a, b) for a in range(n) for b in range(n)]
    flat = _map_entries(one_entry, jobs)
    return [[flat[a * n + b] for b in range(n)] for a in range(n)]


def reconstruct(data: SpectralData, extra_residue_points=None) -> LaxMatrix:
    """Build L(x) from the residue formula; L(z_o) = diag of sheet values."""
    kern = CauchyKernel(data)
    entries = _assemble(data, kern, kern, include_y=True,
                        extra_points=extra_residue_points)
    return LaxMatrix(entries, data)


class TransitionMatrix:
    """Conjugation matrix implementing a divisor change at fixed curve."""

    __slots__ = ("entries", "source", "target")

    def __init__(self, entries, source: SpectralData, target: SpectralData):
        self.entries = entries
        self.source = source
        self.target = target

    @property
    def n(self):
        return len(self.entries)

    def eval_at(self, x0):
        return [[e(x0) for e in row] for row in self.entries]

    def inverse(self):
        zero, one = RatFuncX.zero(), RatFuncX.one()
        det = linalg.bareiss_det(self.entries, zero, one)
        if det.is_zero():
            raise ValidationError("transition matrix is singular")
        adj = linalg.adjugate(self.entries, zero, one)
        inv = [[v / det for v in row] for row in adj]
        return TransitionMatrix(inv, self.target, self.source)

    def conjugate(self, lax: LaxMatrix) -> LaxMatrix:
        """P L P^{-1}, the Lax matrix for the target divisor."""
        inv = self.inverse()
        prod = linalg.mat_mul(linalg.mat_mul(self.entries, lax.entries),
                              inv.entries)
        return LaxMatrix(prod, None)

    def to_jsonable(self):
        return [[ratfunc_jsonable(e) for e in row] for row in self.entries]


def change_divisor(data: SpectralData, target: Divisor) -> TransitionMatrix:
    """P conjugating the source Lax matrix into the target one.

    The target divisor's kernel supplies the first slot, the source
    divisor's kernel the second; the assembly is the Lax formula
    without the eigenvalue factor.
    """
    target_data = SpectralData(data.curve, target, data.p_o, data.z_o,
                               sheet_y=data.sheet_y,
                               orientation=data.orientation)
    kern_target = CauchyKernel(target_data)
    kern_source = CauchyKernel(data)
    entries = _assemble(data, kern_target, kern_source, include_y=False)
    return TransitionMatrix(entries, data, target_data)


def verify_characteristic(lax: LaxMatrix, data: SpectralData) -> dict:
    """a_n(x) * det(yI - L) - E must vanish identically; witness on fail."""
    curve = data.curve
    char = lax.char_poly()
    an = RatFuncX(curve.a(curve.n))
    lhs = char * an
    rhs = YPoly.from_bipoly(curve.e)
    diff = lhs - rhs
    ok = diff.is_zero()
    witness = None
    if not ok:
        for k in range(diff.degree() + 1):
            c = diff[k]
            if not c.is_zero():
                witness = {"y_power": k, "coefficient": c.to_text()}
                break
    return {"ok": ok, "witness": witness}


def verify_pole_locus(lax: LaxMatrix, data: SpectralData) -> dict:
    """Entry denominators must carry no divisor-induced poles.

    Poles of L sit only over zeros of a_n.  A divisor point may happen
    to lie over such a zero; that x-value is excluded from the gcd locus
    because the pole there belongs to a_n, not to the divisor.
    """
    an = data.curve.a(data.curve.n)
    locus = UniPoly([1], "x")
    excluded = []
    for d in data.divisor:
        if an(d.x) == 0:
            excluded.append(rat_str(d.x))
        else:
            locus = locus * UniPoly([-d.x, 1], "x")
    coprime = []
    divides_an = True
    for row in lax.entries:
        crow = []
        for e in row:
            g = gcd(e.den, locus)
            crow.append(g.degree() <= 0)
            if e.den.degree() > 0:
                _, rem = (an ** e.den.degree()).divmod(e.den)
                if not rem.is_zero():
                    divides_an = False
        coprime.append(crow)
    return {
        "ok": all(all(r) for r in coprime),
        "coprime": coprime,
        "excluded_x": excluded,
        "denominators_divide_a_n": divides_an,
    }


def verify_diagonal(lax: LaxMatrix, data: SpectralData) -> dict:
    """L(z_o) must equal diag of the sheet values, in list order."""
    vals = lax.eval_at(data.z_o)
    ok = True
    for i in range(lax.n):
        for j in range(lax.n):
            want = data.sheet_y[i] if i == j else Fraction(0)
            if vals[i][j] != want:
                ok = False
    return {
        "ok": ok,
        "diagonal": [rat_str(vals[i][i]) for i in range(lax.n)],
        "expected": [rat_str(w) for w in data.sheet_y],
    }


def eigencheck_numeric(lax: LaxMatrix, data: SpectralData, x0,
                       kern: CauchyKernel = None) -> dict:
    """Numeric cross-check of the kernel-eigenvector reassembly at x0.

    Checks, at 1e-9 relative: (i) the sheet sum over c of
    K(z_o^(a), x^(c)) K(x^(c), z_o^(b)) equals -delta_ab/(x0-z_o)^2, and
    (ii) L(x0)_ab equals -(x0-z_o)^2 times the sheet sum of
    K(z_o^(a), x^(c)) y_c K(x^(c), z_o^(b)).
    """
    if kern is None:
        kern = CauchyKernel(data)
    curve = data.curve
    x0 = complex(x0)
    sheets, near_branch = curve.numeric_sheets(x0)
    n = curve.n
    zo = complex(data.z_o)
    psi = [[kern.kernel((data.z_o, data.sheet_y[a]), (x0, sheets[c]))
            for c in range(n)] for a in range(n)]
    psi2 = [[kern.kernel((x0, sheets[c]), (data.z_o, data.sheet_y[b]))
             for b in range(n)] for c in range(n)]
    factor = (x0 - zo) ** 2
    # (i) sheet-sum identity.
    target = -1.0 / factor
    scale = abs(target)
    err1 = 0.0
    for a in range(n):
        for b in range(n):
            s = sum(psi[a][c] * psi2[c][b] for c in range(n))
            want = target if a == b else 0.0
            err1 = max(err1, abs(s - want) / scale)
    # (ii) reassembly of L.
    lvals = [[complex(e.num(x0)) / complex(e.den(x0)) for e in row]
             for row in lax.entries]
    lscale = max(max(abs(v) for v in row) for row in lvals)
    err2 = 0.0
    for a in range(n):
        for b in range(n):
            s = sum(psi[a][c] * sheets[c] * psi2[c][b] for c in range(n))
            got = -factor * s
            err2 = max(err2, abs(got - lvals[a][b]) / max(lscale, 1e-30))
    tol = 1e-9
    return {
        "x": [x0.real, x0.imag],
        "near_branch": near_branch,
        "sheet_sum_max_rel_err": err1,
        "sheet_sum_ok": err1 <= tol,
        "reassembly_max_rel_err": err2,
        "reassembly_ok": err2 <= tol,
    }
