"""Fraction-free linear algebra over any exact integral domain.

All routines work on lists of lists of ring elements supporting +, -, *
and an exact division (default: true division, which is exact for
Fraction).  Polynomial callers pass their own exact_div so the Bareiss
divisions stay in the ring instead of promoting to a fraction field.
"""

from __future__ import annotations

import operator
from fractions import Fraction

from .errors import SpecialDivisorError


def _clone(m):
    return [list(row) for row in m]


def bareiss_det(m, zero, one, exact_div=operator.truediv, is_zero=None):
    """Determinant by Bareiss fraction-free elimination.

    `zero`/`one` are the ring's constants; `is_zero` defaults to
    comparison with `zero`.
    """
    if is_zero is None:
        is_zero = lambda v: v == zero
    n = len(m)
    if n == 0:
        return one
    for row in m:
        if len(row) != n:
            raise ValueError("determinant needs a square matrix")
    a = _clone(m)
    sign = 1
    prev = one
    for k in range(n - 1):
        # Pivot: first nonzero entry in column k at or below row k.
        piv = next((i for i in range(k, n) if not is_zero(a[i][k])), None)
        if piv is None:
            return zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev)
            a[i][k] = zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def minor(m, i, j):
    return [[m[r][c] for c in range(len(m)) if c != j]
            for r in range(len(m)) if r != i]


def adjugate(m, zero, one, exact_div=operator.truediv, is_zero=None):
    """Classical adjugate (transposed cofactors); M * adj(M) = det(M) * I."""
    n = len(m)
    if n == 0:
        return []
    if n == 1:
        return [[one]]
    adj = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = bareiss_det(minor(m, i, j), zero, one, exact_div, is_zero)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof
    return adj


def det_adjugate(m, zero, one, exact_div=operator.truediv, is_zero=None):
    """Return (det M, adj M) computed fraction-free."""
    det = bareiss_det(m, zero, one, exact_div, is_zero)
    adj = adjugate(m, zero, one, exact_div, is_zero)
    return det, adj


def solve_exact(a, b):
    """Solve A x = b exactly over Fraction.

    Raises SpecialDivisorError when A is singular; the caller decides how
    to phrase that (for divisor systems it means a special divisor).
    """
    n = len(a)
    for row in a:
        if len(row) != n:
            raise ValueError("solve_exact needs a square matrix")
    if len(b) != n:
        raise ValueError("right-hand side length mismatch")
    # Fraction-free forward elimination on the augmented matrix.
    zero = Fraction(0)
    aug = [[Fraction(v) for v in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    prev = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SpecialDivisorError(
                "linear system is singular (special or degenerate divisor)")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * aug[k][k] - aug[i][k] * aug[k][j]) / prev
            aug[i][k] = zero
        prev = aug[k][k]
    x = [zero] * n
    for i in range(n - 1, -1, -1):
        s = aug[i][n]
        for j in range(i + 1, n):
            s -= aug[i][j] * x[j]
        x[i] = s / aug[i][i]
    return x


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(1, inner)),
                 a[i][0] * b[0][j]) for j in range(cols)] for i in range(rows)]


def mat_identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
