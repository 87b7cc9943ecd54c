"""Frozen reference data and seeded curve generators for the test suite.

Two hand-checked genus-2 cubic fixtures drive the exact tests:

* fixture A: a single divisor, dense coefficient growth, admits both
  expansion orientations (the leading-coefficient assumption holds for
  x and for y);
* fixture B: two divisors over the same curve plus the reference
  transition matrix between them; the leading y-coefficient is x, so
  one divisor point sits over a root of a_n and the Lax matrix picks
  up denominators x.

The reference matrix for fixture A (`FIX1_DISPLAY`) is stored row-major
exactly as in the hand computation that produced it.  That computation
indexed entries with the roles of the two kernel slots swapped, so its
matrix is the transpose of `reconstruct`'s output; the diagonal and
every evaluation L(x0) of symmetric data agree either way.  Tests that
consume it assert the transposed match explicitly.

The generators build random monic-in-y curves through preselected
rational points by solving a linear system for the coefficients:
every condition (a full rational fiber over z_o, curve membership of
divisor, base, and planted points) is linear in the coefficients of
the a_j(x).  Draws that land on any degeneracy are resampled.
"""

from __future__ import annotations

from fractions import Fraction

from spectral_forge.curve import CurvePoint, Divisor, SpectralCurve, SpectralData
from spectral_forge.errors import SpectralForgeError
from spectral_forge.kernel import CauchyKernel
from spectral_forge.linalg import solve_exact
from spectral_forge.parser import parse_curve
from spectral_forge.qpoly import UniPoly
from spectral_forge.ratfunc import RatFuncX

F = Fraction


def rf(num_coeffs, den_coeffs=(1,)):
    """Rational function of x from ascending coefficient lists."""
    return RatFuncX(UniPoly(list(num_coeffs), "x"),
                    UniPoly(list(den_coeffs), "x"))


# ---------------------------------------------------------------------------
# Fixture A: one divisor, both orientations admissible.

FIX1_CURVE = ("(x+3)*y^3 + (-2733/128*x^2 - 1609/192*x + 3829/384)*y^2"
              " + (x^2 + x - 1/2)*y + (x^2 - 3/8*x - 5/8)")
FIX1_DIVISOR = ((F(1, 3), F(1, 3)), (F(2, 3), F(4, 3)))
FIX1_P_O = (F(1), F(0))
FIX1_Z_O = F(-1)
FIX1_SHEETS = (F(-1, 2), F(1, 2), F(3, 2))

# Extra rational point on the curve.  It shares y = 0 with the base
# point, so it can seed the y-oriented kernel in either slot but the
# x-oriented kernel only in the second slot.
FIX1_EXTRA = (F(-5, 8), F(0))

# Reference entries, row-major as in the hand computation (see module
# docstring: transpose of reconstruct's index order).
FIX1_DISPLAY = (
    (rf([F(16989), F(38425), F(20668)], [F(2304), F(768)]),
     rf([F(6645), F(15185), F(8540)], [F(1152), F(384)]),
     rf([F(-29127), F(-68411), F(-39284)], [F(2304), F(768)])),
    (rf([F(379403), F(632586), F(253183)], [F(46080), F(15360)]),
     rf([F(32183), F(51570), F(20923)], [F(4608), F(1536)]),
     rf([F(-674737), F(-1155966), F(-481229)], [F(46080), F(15360)])),
    (rf([F(5167, 512), F(5167, 512)]),
     rf([F(2135, 256), F(2135, 256)]),
     rf([F(-9053, 512), F(-9821, 512)])),
)


# ---------------------------------------------------------------------------
# Fixture B: two divisors, transition matrix, poles over a root of a_n.

FIX2_CURVE = ("x*y^3 + (-6317/2532*x - 2519/2532)*y^2"
              " + (-22639/6752*x^2 - 64913/20256*x + 2017/5064)*y"
              " + 187/422*x^2 + 597/422*x + 1007/1688")
FIX2_DIVISOR = ((F(-1, 3), F(-2)), (F(0), F(1)))
FIX2_TARGET_DIVISOR = ((F(1, 3), F(-1)), (F(2), F(1, 4)))
FIX2_P_O = (F(-1, 2), F(0))
FIX2_Z_O = F(-1)
FIX2_SHEETS = (F(-1, 2), F(1, 2), F(3, 2))

# Extra rational points on the curve.  The two at x = 2 collide with a
# target-divisor x-projection, so they pair with the source divisor
# only; the one at x = 0 shares its x with a source-divisor point and
# can then enter the kernel only through the first slot.
FIX2_EXTRAS = ((F(2), F(-450, 211)), (F(2), F(39, 8)))
FIX2_EXTRA_FIRST_SLOT = (F(0), F(-3021, 5038))

# Reference coefficient matrices: L = A1 x + A0 + AM1 / x for the source
# divisor, the AT* triple for the target divisor.
FIX2_A1 = (
    (F(-305013695, 547074048), F(36762211, 182358016), F(146051771, 182358016)),
    (F(3587544275, 820611072), F(-432393895, 273537024), F(-1717848095, 273537024)),
    (F(-2443006825, 1641222144), F(294446885, 547074048), F(1169801485, 547074048)),
)
FIX2_A0 = (
    (F(-172225487, 273537024), F(23062403, 91179008), F(62992043, 91179008)),
    (F(2476300115, 410305536), F(-120515639, 136768512), F(-917432255, 136768512)),
    (F(-2393754361, 820611072), F(100340389, 273537024), F(1095694909, 273537024)),
)
FIX2_AM1 = (
    (F(234099745, 547074048), F(9362595, 182358016), F(-20067685, 182358016)),
    (F(1365055955, 820611072), F(18198035, 91179008), F(-117016415, 273537024)),
    (F(-2344501897, 1641222144), F(-31255369, 182358016), F(200977261, 547074048)),
)
FIX2_AT1 = (
    (F(-99911711, 34192128), F(-15463713, 11397376), F(-7817917, 11397376)),
    (F(271125907, 51288192), F(13987727, 5698688), F(21215129, 17096064)),
    (F(204290167, 102576384), F(10539587, 11397376), F(15985349, 34192128)),
)
FIX2_AT0 = (
    (F(-2862889, 534252), F(-4417957, 1424672), F(-2142197, 712336)),
    (F(16008727, 1602756), F(15363893, 2137008), F(7348039, 1068504)),
    (F(2898439, 3205512), F(-233527, 4274016), F(1419211, 2137008)),
)
FIX2_ATM1 = (
    (F(-66217121, 34192128), F(-19879943, 11397376), F(-26457235, 11397376)),
    (F(241153357, 51288192), F(72399931, 17096064), F(96353495, 17096064)),
    (F(-111540119, 102576384), F(-33486977, 34192128), F(-44566165, 34192128)),
)

_DEN1 = (F(54016), F(-189056), F(81024))
_DEN2 = (F(81024), F(-283584), F(121536))
_DEN3 = (F(27008), F(-94528), F(40512))
_DEN4 = (F(162048), F(-567168), F(243072))

# Reference transition matrix P with P L P^-1 = L-tilde.
FIX2_P = (
    (rf([F(-15269), F(-147934), F(191431)], _DEN1),
     rf([F(67443), F(58002), F(-9441)], _DEN1),
     rf([F(102891), F(88386), F(-14505)], _DEN1)),
    (rf([F(233773), F(-564994), F(-798767)], _DEN2),
     rf([F(81863), F(-139942), F(-59757)], _DEN3),
     rf([F(83551), F(-69046), F(-152597)], _DEN3)),
    (rf([F(-259691), F(1006622), F(1266313)], _DEN4),
     rf([F(-177153), F(32826), F(209979)], _DEN1),
     rf([F(-215977), F(-139350), F(400723)], _DEN1)),
)


def _points(pairs):
    return [CurvePoint(x, y) for x, y in pairs]


def make_fix1_data(orientation=None) -> SpectralData:
    curve = SpectralCurve(parse_curve(FIX1_CURVE))
    return SpectralData(curve, Divisor(_points(FIX1_DIVISOR)),
                        CurvePoint(*FIX1_P_O), FIX1_Z_O,
                        orientation=orientation)


def make_fix2_data() -> SpectralData:
    curve = SpectralCurve(parse_curve(FIX2_CURVE))
    return SpectralData(curve, Divisor(_points(FIX2_DIVISOR)),
                        CurvePoint(*FIX2_P_O), FIX2_Z_O)


def make_fix2_target_data() -> SpectralData:
    curve = SpectralCurve(parse_curve(FIX2_CURVE))
    return SpectralData(curve, Divisor(_points(FIX2_TARGET_DIVISOR)),
                        CurvePoint(*FIX2_P_O), FIX2_Z_O)


def coeff_matrix(lax, power):
    """Coefficient of x^power of each entry, for entries c or c/x."""
    out = []
    for a in range(lax.n):
        row = []
        for b in range(lax.n):
            e = lax.entry(a, b)
            num, den = e.num, e.den
            if den.degree() == 0:
                v = num[power] / den[0] if power >= 0 else F(0)
            else:
                if den.degree() != 1 or den[0] != 0:
                    raise ValueError("entry denominator is not c*x")
                v = num[power + 1] / den[1]
            row.append(v)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# Seeded generators.


def _draw_fraction(rng, lo=-6, hi=6, dens=(1, 2, 3)):
    return F(rng.randint(lo, hi), rng.choice(dens))


def _draw_distinct(rng, count, taken, lo=-6, hi=6, dens=(1, 2, 3)):
    out = []
    seen = set(taken)
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 500:
            raise RuntimeError("cannot draw distinct rationals")
        v = _draw_fraction(rng, lo, hi, dens)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def random_monic_data(rng, n, degs, genus, planted=0, divisor_points=None,
                      check_kernel=True, attempts=400):
    """Random monic-in-y degree-n curve with a full rational fiber.

    `degs[j]` bounds the x-degree of the y^j coefficient; `planted`
    extra on-curve points (x-separated from all special points) are
    returned alongside the data.  `divisor_points` overrides the random
    divisor draw (same length as the genus) for targeted degeneracies;
    `check_kernel` additionally requires a non-special divisor.
    """
    last = None
    for _ in range(attempts):
        try:
            return _try_monic_draw(rng, n, degs, genus, planted,
                                   divisor_points, check_kernel)
        except (SpectralForgeError, ZeroDivisionError, ValueError) as exc:
            last = exc
    raise RuntimeError("generator exhausted its attempts: %s" % last)


def _try_monic_draw(rng, n, degs, genus, planted, divisor_points,
                    check_kernel):
    z_o = F(rng.randint(-3, 3))
    sheets = _draw_distinct(rng, n, (), lo=-5, hi=5, dens=(1, 2))
    if divisor_points is None:
        div_x = _draw_distinct(rng, genus, (z_o,), dens=(1, 2))
        div_y = _draw_distinct(rng, genus, sheets, dens=(1, 2))
        divisor_points = [(div_x[k], div_y[k]) for k in range(genus)]
    else:
        div_x = [x for x, _ in divisor_points]
        div_y = [y for _, y in divisor_points]
    p_ox = _draw_distinct(rng, 1, div_x + [z_o], dens=(1, 2))[0]
    p_oy = _draw_distinct(rng, 1, div_y + sheets, dens=(1, 2))[0]
    planted_x = _draw_distinct(rng, planted, div_x + [z_o, p_ox],
                               lo=-8, hi=8, dens=(1, 2, 3))
    planted_y = [_draw_fraction(rng, dens=(1, 2)) for _ in range(planted)]

    spots = [(j, k) for j in range(n) for k in range(degs[j] + 1)]
    width = len(spots)
    rows, rhs = [], []

    def point_row(x0, y0):
        return [x0 ** k * y0 ** j for j, k in spots]

    for w in sheets:
        rows.append(point_row(z_o, w))
        rhs.append(-(w ** n))
    for x0, y0 in divisor_points:
        rows.append(point_row(x0, y0))
        rhs.append(-(y0 ** n))
    rows.append(point_row(p_ox, p_oy))
    rhs.append(-(p_oy ** n))
    for x0, y0 in zip(planted_x, planted_y):
        rows.append(point_row(x0, y0))
        rhs.append(-(y0 ** n))
    if len(rows) > width:
        raise ValueError("over-constrained draw: %d conditions, %d "
                         "coefficients" % (len(rows), width))

    # Pin the leading a_0 coefficient away from zero so the Newton
    # polygon keeps its (deg a_0, 0) vertex, then pin low-order spots
    # until the system is square.  Spread the fill pins across the
    # y-blocks: pinning a whole a_j block collapses the fiber rows
    # (each is a w-weighted sum of one direction per surviving block)
    # and makes the system singular for every draw.
    lead = spots.index((0, degs[0]))
    pinned = [lead] if len(rows) < width else []
    fill = sorted(range(width), key=lambda i: (spots[i][1], spots[i][0]))
    for idx in fill:
        if len(rows) + len(pinned) >= width:
            break
        if idx != lead and idx not in pinned:
            pinned.append(idx)
    for idx in pinned:
        row = [F(0)] * width
        row[idx] = F(1)
        rows.append(row)
        if idx == lead:
            v = F(0)
            while v == 0:
                v = _draw_fraction(rng, dens=(1, 2))
            rhs.append(v)
        else:
            rhs.append(_draw_fraction(rng, dens=(1, 2)))

    coeffs = solve_exact(rows, rhs)
    terms = [[k, j, coeffs[idx]] for idx, (j, k) in enumerate(spots)]
    terms.append([0, n, F(1)])
    curve = SpectralCurve(parse_curve(terms))
    if curve.genus() != genus:
        raise ValueError("genus drifted to %d" % curve.genus())
    data = SpectralData(curve, Divisor(_points(divisor_points)),
                        CurvePoint(p_ox, p_oy), z_o)
    extras = []
    for x0, y0 in zip(planted_x, planted_y):
        p = CurvePoint(x0, y0)
        curve.require_on_curve(p, "planted point")
        curve.require_smooth_at(p, "planted point")
        extras.append(p)
    if check_kernel:
        CauchyKernel(data)
    return data, extras


def random_hyperelliptic(rng, genus, planted=0, check_kernel=True):
    """Random y^2 + a1(x) y + a0(x) of the requested genus (0, 1 or 2)."""
    degs = {
        0: [2, 0],
        1: [3, 1],
        2: [5, 3] if planted else [5, 2],
    }[genus]
    return random_monic_data(rng, 2, degs, genus, planted=planted,
                             check_kernel=check_kernel)


def random_trigonal(rng, planted=0, check_kernel=True):
    """Random monic cubic in y of genus 1."""
    return random_monic_data(rng, 3, [3, 2, 1], 1, planted=planted,
                             check_kernel=check_kernel)


def random_collinear_divisor(rng, attempts=400):
    """Genus-3 data whose divisor interpolation matrix is singular.

    Three collinear divisor points make the rows (1, x, y) of the
    interpolation matrix dependent while every pointwise genericity
    check still passes.
    """
    last = None
    for _ in range(attempts):
        alpha = _draw_fraction(rng, dens=(1, 2))
        beta = _draw_fraction(rng, dens=(1, 2))
        if alpha == 0:
            continue
        xs = _draw_distinct(rng, 3, (), dens=(1, 2))
        pts = [(x, alpha * x + beta) for x in xs]
        if len({y for _, y in pts}) != 3:
            continue
        try:
            data, _ = random_monic_data(rng, 3, [4, 2, 1], 3,
                                        divisor_points=pts,
                                        check_kernel=False, attempts=40)
        except (SpectralForgeError, RuntimeError, ValueError) as exc:
            last = exc
            continue
        basis = {tuple(e) for e in data.curve.basis_exponents()}
        if basis == {(0, 0), (1, 0), (0, 1)}:
            return data
    raise RuntimeError("collinear generator exhausted: %s" % last)
