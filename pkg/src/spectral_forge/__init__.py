"""Exact reconstruction of rational Lax matrices from plane spectral curves.

The pipeline: parse a curve E(x, y) = 0, validate a degree-g divisor and
the normalization points, build the rational Cauchy kernel, and assemble
L(x) by exact residue calculus.  Everything downstream of the curve is
Fraction arithmetic; complex evaluation is used only for cross-checks.
"""

from .curve import (CurvePoint, Divisor, NewtonPolygon, SpectralCurve,
                    SpectralData)
from .errors import (AssumptionError, BranchPointError, DegenerateInputError,
                     NonGenericError, SpecialDivisorError, SpectralForgeError,
                     ValidationError)
from .kernel import CauchyKernel
from .parser import parse_curve, parse_polynomial
from .qpoly import BiPoly, UniPoly, rat, rat_str
from .ratfunc import RatFuncX
from .reconstruction import (LaxMatrix, TransitionMatrix, change_divisor,
                             eigencheck_numeric, reconstruct,
                             verify_characteristic, verify_diagonal,
                             verify_pole_locus)
from .series import LaurentSeries, branch_series
from .spectral import (CorrelatorValue, Projector, bidifferential,
                       bidifferential_check, bidifferential_series,
                       correlator, projector, projector_kernel,
                       sheet_sum_identity)

__version__ = "0.1.0"

__all__ = [
    "AssumptionError",
    "BiPoly",
    "BranchPointError",
    "CauchyKernel",
    "CorrelatorValue",
    "CurvePoint",
    "DegenerateInputError",
    "Divisor",
    "LaurentSeries",
    "LaxMatrix",
    "NewtonPolygon",
    "NonGenericError",
    "Projector",
    "RatFuncX",
    "SpecialDivisorError",
    "SpectralCurve",
    "SpectralData",
    "SpectralForgeError",
    "TransitionMatrix",
    "UniPoly",
    "ValidationError",
    "bidifferential",
    "bidifferential_check",
    "bidifferential_series",
    "branch_series",
    "change_divisor",
    "correlator",
    "eigencheck_numeric",
    "parse_curve",
    "parse_polynomial",
    "projector",
    "projector_kernel",
    "rat",
    "rat_str",
    "reconstruct",
    "sheet_sum_identity",
    "verify_characteristic",
    "verify_diagonal",
    "verify_pole_locus",
    "__version__",
]
