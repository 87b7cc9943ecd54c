"""Fraction-free linear algebra: Bareiss determinant, adjugate, solving."""

import random
from fractions import Fraction as F

import pytest

from spectral_forge.errors import SpecialDivisorError
from spectral_forge.linalg import (adjugate, bareiss_det, det_adjugate,
                                   mat_identity, mat_mul, solve_exact)
from spectral_forge.qpoly import UniPoly
from spectral_forge.ratfunc import RatFuncX


def _random_matrix(rng, n):
    return [[F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(n)]


def _naive_det(m):
    n = len(m)
    if n == 0:
        return F(1)
    if n == 1:
        return m[0][0]
    total = F(0)
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _naive_det(sub)
    return total


def test_bareiss_matches_cofactor_expansion():
    rng = random.Random(17)
    for n in range(5):
        for _ in range(8):
            m = _random_matrix(rng, n)
            got = bareiss_det(m, F(0), F(1))
            assert got == _naive_det(m)


def test_bareiss_singular_and_shape_checks():
    m = [[F(1), F(2)], [F(2), F(4)]]
    assert bareiss_det(m, F(0), F(1)) == 0
    with pytest.raises(ValueError):
        bareiss_det([[F(1), F(2)]], F(0), F(1))


def test_bareiss_over_rational_functions():
    x = RatFuncX(UniPoly([0, 1]))
    one = RatFuncX.one()
    zero = RatFuncX.zero()
    m = [[x, one], [one, x]]
    det = bareiss_det(m, zero, one, is_zero=lambda r: r.is_zero())
    assert det == RatFuncX(UniPoly([-1, 0, 1]))


def test_adjugate_identity():
    rng = random.Random(29)
    for n in range(1, 5):
        m = _random_matrix(rng, n)
        det = bareiss_det(m, F(0), F(1))
        adj = adjugate(m, F(0), F(1))
        prod = mat_mul(m, adj)
        for i in range(n):
            for j in range(n):
                assert prod[i][j] == (det if i == j else 0)


def test_det_adjugate_agrees_with_separate_calls():
    rng = random.Random(31)
    m = _random_matrix(rng, 4)
    det, adj = det_adjugate(m, F(0), F(1))
    assert det == bareiss_det(m, F(0), F(1))
    assert adj == adjugate(m, F(0), F(1))


def test_solve_exact_round_trip():
    rng = random.Random(41)
    for _ in range(10):
        n = rng.randint(1, 6)
        a = _random_matrix(rng, n)
        if bareiss_det(a, F(0), F(1)) == 0:
            continue
        x = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
        b = [sum(a[i][j] * x[j] for j in range(n)) for i in range(n)]
        assert solve_exact(a, b) == x


def test_solve_exact_singular_raises():
    a = [[F(1), F(1)], [F(2), F(2)]]
    with pytest.raises(SpecialDivisorError):
        solve_exact(a, [F(1), F(1)])


def test_mat_identity_and_mul():
    eye = mat_identity(3, F(0), F(1))
    m = [[F(i + 3 * j + 1) for i in range(3)] for j in range(3)]
    assert mat_mul(m, eye) == m
    assert mat_mul(eye, m) == m
