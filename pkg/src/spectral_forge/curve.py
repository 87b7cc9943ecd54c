"""Plane spectral curves, Newton polygons, and the point data that a
reconstruction consumes.

The genus used everywhere is the lattice-interior count of the Newton
polygon, and the exponent list for the holomorphic-differential basis is
the lex-sorted diminished interior (interior shifted by (-1, -1)).
"""

from __future__ import annotations

from .errors import (AssumptionError, BranchPointError, NonGenericError,
                     SpecialDivisorError, ValidationError)
from .qpoly import BiPoly, UniPoly, rat, rat_str, rational_roots, resultant
from .series import branch_series


class CurvePoint:
    """A point (x, y) with exact rational coordinates."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = rat(x)
        self.y = rat(y)

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def as_pair(self):
        return (self.x, self.y)

    def __repr__(self):
        return "CurvePoint(%s, %s)" % (rat_str(self.x), rat_str(self.y))


class Divisor:
    """An ordered list of curve points; order fixes row indexing."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = []
        for p in points:
            if isinstance(p, CurvePoint):
                pts.append(p)
            else:
                px, py = p
                pts.append(CurvePoint(px, py))
        self.points = pts

    def degree(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, k):
        return self.points[k]

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return "Divisor(%r)" % (self.points,)


def _hull(points):
    """Convex hull (counterclockwise) by the monotone chain method."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class NewtonPolygon:
    """Convex hull of the exponent support of a bivariate polynomial."""

    __slots__ = ("support", "vertices")

    def __init__(self, support):
        self.support = sorted(support)
        if not self.support:
            raise ValidationError("Newton polygon of the zero polynomial")
        self.vertices = _hull(self.support)

    def _strictly_inside(self, pt):
        verts = self.vertices
        if len(verts) < 3:
            return False
        px, py = pt
        for k in range(len(verts)):
            ax, ay = verts[k]
            bx, by = verts[(k + 1) % len(verts)]
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) <= 0:
                return False
        return True

    def interior_points(self):
        xs = [p[0] for p in self.support]
        ys = [p[1] for p in self.support]
        out = []
        for i in range(min(xs), max(xs) + 1):
            for j in range(min(ys), max(ys) + 1):
                if self._strictly_inside((i, j)):
                    out.append((i, j))
        return sorted(out)

    def genus(self):
        return len(self.interior_points())

    def diminished(self):
        """Interior shifted by (-1, -1); exponents of the basis monomials."""
        return [(i - 1, j - 1) for (i, j) in self.interior_points()]


class SpectralCurve:
    """E(x, y) = 0 with cached coefficient lists and derived data."""

    __slots__ = ("e", "e_y", "e_x", "a_coeffs", "b_coeffs", "polygon")

    def __init__(self, e: BiPoly):
        if e.is_zero():
            raise ValidationError("curve polynomial is zero")
        if e.deg_y() < 1:
            raise ValidationError("curve polynomial has no y dependence")
        self.e = e
        self.e_y = e.derivative_y()
        self.e_x = e.derivative_x()
        self.a_coeffs = e.coeffs_in_y()
        self.b_coeffs = e.coeffs_in_x()
        self.polygon = NewtonPolygon(e.support())

    @property
    def n(self):
        return self.e.deg_y()

    @property
    def m(self):
        return self.e.deg_x()

    def a(self, j) -> UniPoly:
        return self.a_coeffs[j]

    def b(self, i) -> UniPoly:
        return self.b_coeffs[i]

    def genus(self):
        return self.polygon.genus()

    def basis_exponents(self):
        return self.polygon.diminished()

    def orientation(self, forced=None) -> str:
        """Pick the admissible seed orientation, 'y' before 'x'.

        'y' needs the top two y-coefficients a_n, a_{n-1} to share no
        root; 'x' needs the same for b_m, b_{m-1}.  Forcing checks the
        requested direction and errors if it is not admissible.
        """
        y_ok = resultant(self.a_coeffs[self.n],
                         self.a_coeffs[self.n - 1]) != 0
        x_ok = (self.m >= 1 and
                resultant(self.b_coeffs[self.m],
                          self.b_coeffs[self.m - 1]) != 0)
        if forced is not None:
            if forced not in ("y", "x"):
                raise ValidationError("orientation must be 'y' or 'x'")
            ok = y_ok if forced == "y" else x_ok
            if not ok:
                raise AssumptionError(
                    "forced orientation %r is not admissible: the top two "
                    "coefficients in that direction share a root" % forced,
                    orientation=forced)
            return forced
        if y_ok:
            return "y"
        if x_ok:
            return "x"
        raise AssumptionError(
            "no admissible orientation: a_n, a_{n-1} share a root and "
            "b_m, b_{m-1} share a root")

    def contains(self, point: CurvePoint) -> bool:
        return self.e(point.x, point.y) == 0

    def require_on_curve(self, point: CurvePoint, label: str):
        if not self.contains(point):
            raise ValidationError(
                "%s = (%s, %s) does not lie on the curve"
                % (label, rat_str(point.x), rat_str(point.y)),
                point={"x": rat_str(point.x), "y": rat_str(point.y)})

    def require_smooth_at(self, point: CurvePoint, label: str):
        if (self.e_y(point.x, point.y) == 0
                and self.e_x(point.x, point.y) == 0):
            raise NonGenericError(
                "%s is a singular point of the curve" % label,
                point={"x": rat_str(point.x), "y": rat_str(point.y)})

    def preimages(self, x0) -> list:
        """All n rational preimages of x0, sorted; errors if any escape Q."""
        x0 = rat(x0)
        fiber = self.e.slice_x(x0)
        if fiber.degree() != self.n:
            raise AssumptionError(
                "a sheet runs to infinity over x = %s (leading y-coefficient "
                "vanishes); choose another base point" % rat_str(x0))
        roots, complete = rational_roots(fiber)
        if not complete:
            raise AssumptionError(
                "the fiber over x = %s does not split over Q; supply the "
                "preimages explicitly or use a numeric check" % rat_str(x0))
        for r, mult in roots:
            if mult > 1:
                raise BranchPointError(
                    "x = %s lies under a branch point (y = %s has "
                    "multiplicity %d)" % (rat_str(x0), rat_str(r), mult))
        return [r for r, _ in roots]

    def numeric_sheets(self, x0, polish_steps=8):
        """Complex roots of E(x0, y) = 0, Newton-polished and sorted.

        Returns (sheets, near_branch) where near_branch flags a minimum
        pairwise gap below 1e-8 (results there are untrustworthy).
        """
        import numpy

        x0 = complex(x0)
        coeffs = [complex(a(x0)) for a in self.a_coeffs]
        if abs(coeffs[-1]) == 0:
            raise AssumptionError(
                "leading y-coefficient vanishes numerically at x = %s" % x0)
        roots = numpy.roots(list(reversed(coeffs)))
        sheets = []
        for r in roots:
            y = complex(r)
            for _ in range(polish_steps):
                dy = self.e_y(x0, y)
                if dy == 0:
                    break
                step = self.e(x0, y) / dy
                y -= step
                if abs(step) <= 1e-15 * max(1.0, abs(y)):
                    break
            sheets.append(y)
        sheets.sort(key=lambda z: (z.real, z.imag))
        near_branch = False
        for i in range(len(sheets)):
            for j in range(i + 1, len(sheets)):
                if abs(sheets[i] - sheets[j]) < 1e-8:
                    near_branch = True
        return sheets, near_branch

    def local_series(self, point: CurvePoint, order: int):
        """Exact branch series (xs, ys) at a smooth non-branch point."""
        return branch_series(self.e, point.x, point.y, order)

    def check_normalization(self, z_o) -> dict:
        """Fiber over z_o must have full degree n and distinct roots."""
        z_o = rat(z_o)
        fiber = self.e.slice_x(z_o)
        full_degree = fiber.degree() == self.n
        square_free = (not fiber.is_zero()
                       and resultant(fiber, fiber.derivative()) != 0)
        return {
            "z_o": rat_str(z_o),
            "full_degree": full_degree,
            "square_free": square_free,
            "ok": full_degree and square_free,
        }

    def analyze(self) -> dict:
        try:
            orient = self.orientation()
        except AssumptionError:
            orient = None
        return {
            "deg_y": self.n,
            "deg_x": self.m,
            "genus": self.genus(),
            "newton_vertices": [list(v) for v in self.polygon.vertices],
            "interior_points": [list(v) for v in self.polygon.interior_points()],
            "basis_exponents": [list(v) for v in self.basis_exponents()],
            "orientation": orient,
        }


class SpectralData:
    """Curve + divisor + base point + reconstruction point, validated.

    Validation covers membership, smoothness at the supplied points, the
    fiber over z_o (n distinct rational preimages), and the coordinate
    separations the kernel formulas divide by.
    """

    __slots__ = ("curve", "divisor", "p_o", "z_o", "sheet_y", "orientation")

    def __init__(self, curve: SpectralCurve, divisor: Divisor,
                 p_o: CurvePoint, z_o, sheet_y=None, orientation=None):
        self.curve = curve
        self.divisor = divisor
        self.p_o = p_o
        self.z_o = rat(z_o)
        g = curve.genus()
        if divisor.degree() != g:
            raise ValidationError(
                "divisor degree %d does not match the curve genus %d"
                % (divisor.degree(), g))
        seen = set()
        for k, d in enumerate(divisor):
            if (d.x, d.y) in seen:
                raise SpecialDivisorError(
                    "divisor point %d repeats an earlier point" % (k + 1),
                    point=[rat_str(d.x), rat_str(d.y)])
            seen.add((d.x, d.y))
            curve.require_on_curve(d, "divisor point %d" % (k + 1))
            curve.require_smooth_at(d, "divisor point %d" % (k + 1))
        curve.require_on_curve(p_o, "base point p_o")
        curve.require_smooth_at(p_o, "base point p_o")
        if sheet_y is None:
            sheet_y = curve.preimages(self.z_o)
        else:
            sheet_y = [rat(w) for w in sheet_y]
            if len(sheet_y) != curve.n:
                raise ValidationError(
                    "expected %d sheet values over z_o, got %d"
                    % (curve.n, len(sheet_y)))
            for w in sheet_y:
                curve.require_on_curve(CurvePoint(self.z_o, w),
                                       "sheet point over z_o")
            if len(set(sheet_y)) != curve.n:
                raise BranchPointError("sheet values over z_o are not distinct")
        self.sheet_y = sheet_y
        for w in sheet_y:
            curve.require_smooth_at(CurvePoint(self.z_o, w),
                                    "sheet point over z_o")
        report = curve.check_normalization(self.z_o)
        if not report["ok"]:
            raise NonGenericError(
                "the fiber over z_o = %s is degenerate" % rat_str(self.z_o),
                **report)
        self._check_separation()
        self.orientation = curve.orientation(orientation)
        # The seed formulas divide by e_y at every supplied point.
        for k, d in enumerate(divisor):
            if curve.e_y(d.x, d.y) == 0:
                raise BranchPointError(
                    "divisor point %d is a y-branch point" % (k + 1))
        if curve.e_y(p_o.x, p_o.y) == 0:
            raise BranchPointError("base point p_o is a y-branch point")

    def _check_separation(self):
        ys = ([(d.y, "divisor point %d" % (k + 1))
               for k, d in enumerate(self.divisor)]
              + [(self.p_o.y, "base point p_o")]
              + [(w, "sheet over z_o") for w in self.sheet_y])
        seen = {}
        for v, label in ys:
            if v in seen:
                raise NonGenericError(
                    "y-coordinate %s is shared by %s and %s"
                    % (rat_str(v), seen[v], label))
            seen[v] = label
        xs = ([(d.x, "divisor point %d" % (k + 1))
               for k, d in enumerate(self.divisor)]
              + [(self.p_o.x, "base point p_o"), (self.z_o, "z_o")])
        seen = {}
        for v, label in xs:
            if v in seen:
                raise NonGenericError(
                    "x-coordinate %s is shared by %s and %s"
                    % (rat_str(v), seen[v], label))
            seen[v] = label

    def sheet_point(self, k) -> CurvePoint:
        return CurvePoint(self.z_o, self.sheet_y[k])

    @property
    def genus(self):
        return self.curve.genus()
