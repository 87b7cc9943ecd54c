"""Job-file loading and canonical JSON serialization.

A job is a JSON object with the curve and the reconstruction data:

    {
      "curve": "y^3 - x^2 + 1"            (or a list of [i, j, coeff]),
      "divisor": [["1/3", "1/3"], ...],
      "p_o": ["1", "0"],
      "z_o": "-1",
      "preimages": ["-1/2", "1/2", "3/2"],   (optional)
      "orientation": "y",                    (optional)
      "target_divisor": [...],               (change-divisor only)
      "points": [["x", "y"], ...],           (evaluation points, optional)
      "eta_orders": [1, 2]                   (optional)
    }

All rationals are strings "p/q" (or integers); floats are rejected.
Canonical output uses sorted keys and "p/q" strings so identical jobs
produce byte-identical artifacts.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .curve import CurvePoint, Divisor, SpectralCurve, SpectralData
from .errors import ValidationError
from .parser import parse_curve
from .qpoly import BiPoly, UniPoly, rat, rat_str
from .ratfunc import RatFuncX
from .reconstruction import ratfunc_jsonable
from .series import LaurentSeries

_KNOWN_KEYS = {"curve", "divisor", "p_o", "z_o", "preimages", "orientation",
               "target_divisor", "points", "eta_orders"}


def load_job(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError("cannot read job file: %s" % exc)
    except json.JSONDecodeError as exc:
        raise ValidationError("job file is not valid JSON: %s" % exc)
    return job_from_dict(obj)


def job_from_dict(obj) -> dict:
    if not isinstance(obj, dict):
        raise ValidationError("job must be a JSON object")
    for key in ("curve", "divisor", "p_o", "z_o"):
        if key not in obj:
            raise ValidationError("job is missing the %r field" % key)
    unknown = sorted(set(obj) - _KNOWN_KEYS)
    if unknown:
        raise ValidationError("unknown job fields: %s" % ", ".join(unknown))
    return obj


def _job_point(raw, label: str) -> CurvePoint:
    if (not isinstance(raw, (list, tuple))) or len(raw) != 2:
        raise ValidationError("%s must be a [x, y] pair" % label)
    return CurvePoint(rat(raw[0]), rat(raw[1]))


def _job_divisor(raw, label: str) -> Divisor:
    if not isinstance(raw, (list, tuple)):
        raise ValidationError("%s must be a list of [x, y] pairs" % label)
    points = [_job_point(p, "%s point %d" % (label, k + 1))
              for k, p in enumerate(raw)]
    return Divisor(points)


def build_data(job: dict, orientation: str = None) -> SpectralData:
    """Construct validated SpectralData; CLI flag overrides the job field."""
    curve = SpectralCurve(parse_curve(job["curve"]))
    divisor = _job_divisor(job["divisor"], "divisor")
    p_o = _job_point(job["p_o"], "p_o")
    z_o = rat(job["z_o"])
    sheet_y = None
    if job.get("preimages") is not None:
        if not isinstance(job["preimages"], (list, tuple)):
            raise ValidationError("preimages must be a list of rationals")
        sheet_y = [rat(w) for w in job["preimages"]]
    orient = orientation if orientation is not None else job.get("orientation")
    if orient is not None and orient not in ("y", "x"):
        raise ValidationError("orientation must be \"y\" or \"x\"")
    return SpectralData(curve, divisor, p_o, z_o,
                        sheet_y=sheet_y, orientation=orient)


def target_divisor(job: dict) -> Divisor:
    if job.get("target_divisor") is None:
        raise ValidationError("change-divisor needs a target_divisor field")
    return _job_divisor(job["target_divisor"], "target_divisor")


def eval_points(job: dict, data: SpectralData, required: bool = False):
    raw = job.get("points")
    if raw is None:
        if required:
            raise ValidationError("this command needs a points field")
        return []
    points = []
    for k, entry in enumerate(raw):
        p = _job_point(entry, "points entry %d" % (k + 1))
        data.curve.require_on_curve(p, "points entry %d" % (k + 1))
        points.append(p)
    return points


def eta_orders(job: dict, genus: int):
    raw = job.get("eta_orders")
    if raw is None:
        return list(range(1, max(genus, 2) + 1))
    orders = []
    for v in raw:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValidationError("eta_orders must be positive integers")
        orders.append(v)
    return orders


def to_jsonable(value):
    """Recursive conversion to JSON-safe types with canonical rationals."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, CurvePoint):
        return [rat_str(value.x), rat_str(value.y)]
    if isinstance(value, RatFuncX):
        return ratfunc_jsonable(value)
    if isinstance(value, (UniPoly, BiPoly)):
        return value.to_text()
    if isinstance(value, LaurentSeries):
        return {
            "valuation": value.val,
            "coefficients": [to_jsonable(c) for c in value.coeffs],
            "precision": value.prec,
        }
    if isinstance(value, Divisor):
        return [to_jsonable(p) for p in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError("cannot serialize %r" % type(value).__name__)


def canonical_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"
