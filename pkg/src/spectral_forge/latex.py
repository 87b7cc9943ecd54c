"""LaTeX emission for rational matrices: bmatrix entries with \\frac."""

from __future__ import annotations

from fractions import Fraction

from .qpoly import UniPoly
from .ratfunc import RatFuncX


def latex_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    if c.numerator < 0:
        return "-\\frac{%d}{%d}" % (-c.numerator, c.denominator)
    return "\\frac{%d}{%d}" % (c.numerator, c.denominator)


def _latex_monomial(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return "%s^{%d}" % (var, k)


def latex_poly(p: UniPoly) -> str:
    if p.degree() < 0:
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = p[k]
        if c == 0:
            continue
        mono = _latex_monomial(p.var, k)
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = latex_fraction(abs(c)) + " " + mono
        else:
            body = latex_fraction(abs(c))
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def latex_ratfunc(f: RatFuncX) -> str:
    # NOTE: denominators are monic, so a degree-0 denominator is 1.
    if f.den.degree() == 0:
        return latex_poly(f.num)
    return "\\frac{%s}{%s}" % (latex_poly(f.num), latex_poly(f.den))


def latex_matrix(entries) -> str:
    """Entries are RatFuncX (or anything latex_ratfunc accepts)."""
    rows = [" & ".join(latex_ratfunc(e) for e in row) for row in entries]
    body = " \\\\\n".join(rows)
    return "\\begin{bmatrix}\n%s\n\\end{bmatrix}" % body
