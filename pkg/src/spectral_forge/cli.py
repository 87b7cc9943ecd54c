"""Command-line surface: job validation, orchestration, canonical output.

Exit codes: 0 success, 1 a verification ran and failed, 2 invalid input,
3 failed orientation or branch-point assumption, 4 special divisor,
5 internal error.  Errors are structured JSON on stderr; artifacts are
canonical JSON on stdout or --out, byte-identical for identical jobs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .curve import SpectralData
from .errors import SpectralForgeError, ValidationError
from .jobspec import (build_data, canonical_json, eta_orders, eval_points,
                      load_job, target_divisor)
from .kernel import CauchyKernel
from .latex import latex_matrix
from .reconstruction import (LaxMatrix, change_divisor, eigencheck_numeric,
                             lax_from_jsonable, reconstruct,
                             verify_characteristic, verify_diagonal,
                             verify_pole_locus)
from .spectral import (bidifferential_check, bidifferential_series, projector,
                       projector_kernel, sheet_sum_identity)


def _identity_report(identity, points, lhs, rhs, passed,
                     abs_err=None, rel_err=None) -> dict:
    return {
        "identity": identity,
        "points": points,
        "lhs": lhs,
        "rhs": rhs,
        "abs_err": abs_err,
        "rel_err": rel_err,
        "pass": bool(passed),
    }


def _verification_block(lax: LaxMatrix, data: SpectralData) -> dict:
    char = verify_characteristic(lax, data)
    diag = verify_diagonal(lax, data)
    poles = verify_pole_locus(lax, data)
    return {
        "characteristic": char,
        "diagonal": diag,
        "pole_locus": poles,
        "pass": char["ok"] and diag["ok"] and poles["ok"],
    }


def _numeric_block(lax: LaxMatrix, data: SpectralData,
                   kern: CauchyKernel) -> dict:
    checks = []
    offset = Fraction(3, 2)
    while len(checks) < 2 and offset < 8:
        x0 = data.z_o + offset
        offset += Fraction(5, 4)
        if any(d.x == x0 for d in data.divisor) or x0 == data.p_o.x:
            continue
        try:
            checks.append(eigencheck_numeric(lax, data, x0, kern))
        except SpectralForgeError:
            continue
    return {
        "eigencheck": checks,
        "pass": all(c["sheet_sum_ok"] and c["reassembly_ok"]
                    for c in checks) and bool(checks),
    }


def cmd_reconstruct(job, args) -> tuple:
    data = build_data(job, args.orientation)
    kern = CauchyKernel(data)
    lax = reconstruct(data)
    verification = _verification_block(lax, data)
    artifact = {
        "command": "reconstruct",
        "curve": data.curve.e.to_text(),
        "orientation": data.orientation,
        "genus": data.genus,
        "z_o": data.z_o,
        "sheet_y": list(data.sheet_y),
        "lax": lax.to_jsonable(),
        "verification": verification,
    }
    if args.numeric_checks:
        artifact["numeric"] = _numeric_block(lax, data, kern)
    if args.latex:
        artifact["latex"] = latex_matrix(lax.entries)
    ok = verification["pass"] and (not args.numeric_checks
                                   or artifact["numeric"]["pass"])
    return artifact, 0 if ok else 1


def _load_matrix_file(path: str, data: SpectralData) -> LaxMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError("cannot read matrix file: %s" % exc)
    except json.JSONDecodeError as exc:
        raise ValidationError("matrix file is not valid JSON: %s" % exc)
    if isinstance(obj, dict) and "lax" in obj:
        obj = obj["lax"]
    if not isinstance(obj, list):
        raise ValidationError("matrix file must hold a list of rows")
    return lax_from_jsonable(obj, data)


def cmd_verify(job, args) -> tuple:
    data = build_data(job, args.orientation)
    lax = _load_matrix_file(args.matrix, data)
    verification = _verification_block(lax, data)
    artifact = {
        "command": "verify",
        "matrix_file": args.matrix,
        "verification": verification,
    }
    if args.numeric_checks:
        kern = CauchyKernel(data)
        artifact["numeric"] = _numeric_block(lax, data, kern)
        return artifact, 0 if (verification["pass"]
                               and artifact["numeric"]["pass"]) else 1
    return artifact, 0 if verification["pass"] else 1


def cmd_kernel(job, args) -> tuple:
    data = build_data(job, args.orientation)
    kern = CauchyKernel(data)
    points = eval_points(job, data, required=True)
    reports = []
    for q in points:
        entry = {
            "q": q,
            "q_alpha": kern.q_coefficients((q.x, q.y)),
            "kernel_at_divisor": [kern.kernel((d.x, d.y), (q.x, q.y))
                                  for d in data.divisor],
        }
        if args.numeric_checks:
            entry["residues"] = kern.verify_residues(q)
        reports.append(entry)
    pairs = []
    for p in points:
        for q in points:
            if p.x == q.x and p.y == q.y:
                continue
            pairs.append({"p": p, "q": q,
                          "value": kern.kernel((p.x, p.y), (q.x, q.y))})
    artifact = {
        "command": "kernel",
        "basis_exponents": [list(a) for a in data.curve.basis_exponents()],
        "orientation": data.orientation,
        "points": reports,
        "pairs": pairs,
    }
    return artifact, 0


def cmd_differentials(job, args) -> tuple:
    data = build_data(job, args.orientation)
    kern = CauchyKernel(data)
    g = data.genus
    numerators = kern.holomorphic_diffs()
    ey = data.curve.e_y
    interp = [[numerators[j](d.x, d.y) / ey(d.x, d.y)
               for d in data.divisor] for j in range(g)]
    interp_ok = all(interp[j][l] == (1 if j == l else 0)
                    for j in range(g) for l in range(g))
    points = eval_points(job, data)
    eta = []
    for k in eta_orders(job, g):
        cert = kern.verify_second_kind(k)
        values = [{"p": p, "value": kern.second_kind(k, (p.x, p.y))}
                  for p in points if p.x != data.p_o.x or p.y != data.p_o.y]
        eta.append({"k": k, "principal_part": cert, "values": values})
    artifact = {
        "command": "differentials",
        "genus": g,
        "holomorphic_numerators": [n.to_text() for n in numerators],
        "interpolation": interp,
        "interpolation_ok": interp_ok,
        "eta": eta,
    }
    ok = interp_ok and all(e["principal_part"]["ok"] for e in eta)
    return artifact, 0 if ok else 1


def cmd_change_divisor(job, args) -> tuple:
    data = build_data(job, args.orientation)
    target = target_divisor(job)
    tmat = change_divisor(data, target)
    lax = reconstruct(data)
    lax_t = reconstruct(tmat.target)
    conj = tmat.conjugate(lax)
    conj_ok = all(conj.entry(a, b) == lax_t.entry(a, b)
                  for a in range(lax.n) for b in range(lax.n))
    artifact = {
        "command": "change-divisor",
        "source_divisor": data.divisor,
        "target_divisor": target,
        "transition": tmat.to_jsonable(),
        "conjugation_ok": conj_ok,
    }
    if args.latex:
        artifact["latex"] = latex_matrix(tmat.entries)
    return artifact, 0 if conj_ok else 1


def cmd_projector(job, args) -> tuple:
    data = build_data(job, args.orientation)
    kern = CauchyKernel(data)
    lax = reconstruct(data)
    points = eval_points(job, data, required=True)
    special_x = {data.z_o, data.p_o.x} | {d.x for d in data.divisor}
    reports = []
    all_ok = True
    for p in points:
        pi = projector(lax, (p.x, p.y))
        trace = pi.trace()
        eigen_ok = _eigen_residual_zero(pi.matrix, lax, p)
        entry = {
            "p": p,
            "matrix": [list(row) for row in pi.matrix],
            "trace": trace,
            "trace_ok": trace == 1,
            "eigen_ok": eigen_ok,
        }
        if p.x not in special_x:
            alt = projector_kernel(data, (p.x, p.y), kern)
            match = all(pi.matrix[i][j] == alt.matrix[i][j]
                        for i in range(pi.n) for j in range(pi.n))
            entry["kernel_route_ok"] = match
        else:
            entry["kernel_route_ok"] = None
        ok = (entry["trace_ok"] and eigen_ok
              and entry["kernel_route_ok"] is not False)
        all_ok = all_ok and ok
        reports.append(entry)
    artifact = {"command": "projector", "points": reports}
    return artifact, 0 if all_ok else 1


def _eigen_residual_zero(pi, lax: LaxMatrix, p) -> bool:
    lv = lax.eval_at(p.x)
    n = len(lv)
    for i in range(n):
        for j in range(n):
            acc = Fraction(0)
            for k in range(n):
                m_kj = (p.y if k == j else Fraction(0)) - lv[k][j]
                acc += pi[i][k] * m_kj
            if acc != 0:
                return False
    return True


def cmd_selftest(job, args) -> tuple:
    start = time.perf_counter()
    data = build_data(job, args.orientation)
    kern = CauchyKernel(data)
    lax = reconstruct(data)
    checks = []
    ver = _verification_block(lax, data)
    checks.append(_identity_report(
        "characteristic", None, None, None, ver["characteristic"]["ok"]))
    checks.append(_identity_report(
        "diagonal_at_z_o", None, ver["diagonal"]["diagonal"],
        ver["diagonal"]["expected"], ver["diagonal"]["ok"]))
    checks.append(_identity_report(
        "pole_locus", None, None, None, ver["pole_locus"]["ok"]))

    q = data.sheet_point(0)
    at_div = [kern.kernel((d.x, d.y), (q.x, q.y)) for d in data.divisor]
    checks.append(_identity_report(
        "kernel_vanishes_on_divisor", [q], at_div,
        [Fraction(0)] * data.genus, all(v == 0 for v in at_div)))

    qc = kern.q_coefficients((q.x, q.y))
    qc_swapped = kern.q_coefficients((data.p_o.x, data.p_o.y),
                                     base=(q.x, q.y))
    odd_ok = all(a + b == 0 for a, b in zip(qc, qc_swapped))
    checks.append(_identity_report(
        "q_alpha_oddness", [q], qc, [-v for v in qc_swapped], odd_ok))

    res = kern.verify_residues(q)
    checks.append(_identity_report(
        "kernel_residues", [q], res,
        {"at_q": "+1", "at_base": "-1"},
        res["at_q"]["ok"] and res["at_base"]["ok"]))

    numerators = kern.holomorphic_diffs()
    ey = data.curve.e_y
    interp_ok = all(
        numerators[j](d.x, d.y) / ey(d.x, d.y) == (1 if j == l else 0)
        for j in range(data.genus)
        for l, d in enumerate(data.divisor))
    checks.append(_identity_report(
        "holomorphic_interpolation", None, None, None, interp_ok))

    for k in (1, 2):
        cert = kern.verify_second_kind(k)
        checks.append(_identity_report(
            "second_kind_principal_part_k%d" % k, None, cert, None,
            cert["ok"]))

    d1 = data.divisor[0]
    pi = projector(lax, (d1.x, d1.y))
    checks.append(_identity_report(
        "projector_trace", [d1], pi.trace(), Fraction(1), pi.trace() == 1))
    checks.append(_identity_report(
        "projector_eigen", [d1], None, None,
        _eigen_residual_zero(pi.matrix, lax, d1)))
    series = bidifferential_series(lax, data, d1, order=2)
    series_ok = (series.valuation() == 0 and series.coefficient(0) == 1)
    checks.append(_identity_report(
        "bidifferential_normalization", [d1],
        {"head": series.coefficient(0), "valuation": series.valuation()},
        {"head": "1"}, series_ok))

    points = eval_points(job, data)
    for p1, p2 in zip(points, points[1:]):
        if p1.x == p2.x:
            continue
        rep = sheet_sum_identity(data, (p1.x, p1.y), (p2.x, p2.y), kern)
        checks.append(_identity_report(
            "sheet_sum", [p1, p2], rep["lhs"], rep["rhs"], rep["ok"],
            rel_err=rep["rel_err"]))
        rep2 = bidifferential_check(lax, data, (p1.x, p1.y), (p2.x, p2.y),
                                    kern)
        checks.append(_identity_report(
            "bidifferential_vs_kernel", [p1, p2], rep2["value"],
            rep2["kernel_side"], rep2["ok"], rel_err=rep2["rel_err"]))

    numeric = None
    if args.numeric_checks:
        numeric = _numeric_block(lax, data, kern)
        checks.append(_identity_report(
            "numeric_eigencheck", None, None, None, numeric["pass"]))

    passed = all(c["pass"] for c in checks)
    artifact = {
        "command": "selftest",
        "checks": checks,
        "pass": passed,
    }
    if numeric is not None:
        artifact["numeric"] = numeric
    runtime = time.perf_counter() - start
    print("selftest runtime: %.3f s" % runtime, file=sys.stderr)
    return artifact, 0 if passed else 1


_COMMANDS = {
    "reconstruct": cmd_reconstruct,
    "verify": cmd_verify,
    "kernel": cmd_kernel,
    "differentials": cmd_differentials,
    "change-divisor": cmd_change_divisor,
    "projector": cmd_projector,
    "selftest": cmd_selftest,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-forge",
        description="Exact Lax-matrix reconstruction from a plane "
                    "spectral curve and divisor data.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--job", required=True,
                       help="JSON job file (curve, divisor, p_o, z_o, ...)")
        p.add_argument("--out", help="write the artifact here "
                                     "instead of stdout")
        p.add_argument("--latex", action="store_true",
                       help="include a LaTeX bmatrix rendering")
        p.add_argument("--orientation", choices=("y", "x"),
                       help="force the expansion orientation")
        p.add_argument("--numeric-checks", action="store_true",
                       help="add floating-point identity checks")
        if name == "verify":
            p.add_argument("--matrix", required=True,
                           help="matrix artifact to verify (JSON)")
    return parser


def _emit(artifact, out_path):
    text = canonical_json(artifact)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        job = load_job(args.job)
        artifact, code = _COMMANDS[args.command](job, args)
        _emit(artifact, args.out)
        return code
    except SpectralForgeError as exc:
        sys.stderr.write(canonical_json({"error": exc.to_jsonable()}))
        return exc.exit_code
    except Exception as exc:  # pragma: no cover - safety net
        sys.stderr.write(canonical_json({"error": {
            "type": "InternalError",
            "message": str(exc) or type(exc).__name__,
            "exit_code": 5,
        }}))
        return 5


if __name__ == "__main__":
    sys.exit(main())
