from fractions import Fraction
from itertools import permutations
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperspec.polynomial import (
    Polynomial, determinant, gcd, poly_roots, power_sums, squarefree_decomposition,
)

small = st.integers(-4, 4)
polys = st.lists(small, min_size=1, max_size=4).map(Polynomial)


def _perm_sign(p):
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign *= (-1) ** (length - 1)
    return sign


def _leibniz(M):
    n = len(M)
    total = Polynomial()
    for p in permutations(range(n)):
        term = Polynomial([_perm_sign(p)])
        for i in range(n):
            term = term * M[i][p[i]]
        total = total + term
    return total


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(polys, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_determinant_leibniz(M):
    assert determinant(M) == _leibniz(M)


def test_determinant_needs_pivot_swap():
    x = Polynomial([0, 1])
    one = Polynomial([1])
    M = [[Polynomial(), one], [one, x]]
    assert determinant(M) == Polynomial([-1])


@given(polys, polys)
def test_ring_axioms(a, b):
    x = Fraction(3, 7)
    assert (a * b)(x) == a(x) * b(x)
    assert (a - b)(x) == a(x) - b(x)
    if not b.is_zero():
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_gcd_and_squarefree():
    x1 = Polynomial([-1, 1])
    x2 = Polynomial([2, 1])
    p = x1 ** 3 * x2 * Polynomial([5])
    assert gcd(p, p.derivative()) == x1 ** 2
    parts = squarefree_decomposition(p)
    assert {m: f for f, m in parts} == {1: x2, 3: x1}


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_roots_recover_integer_roots(rs):
    roots = poly_roots(Polynomial.from_roots(rs))
    assert sorted(round(r.real) for r in roots) == sorted(rs)
    assert all(abs(r.imag) < 1e-9 and abs(r.real - round(r.real)) < 1e-9 for r in roots)


def test_roots_match_numpy():
    rng = random.Random(5)
    for _ in range(20):
        cs = [rng.randint(-9, 9) for _ in range(6)] + [1]
        ours = np.array(poly_roots(Polynomial(cs)))
        ref = np.roots(cs[::-1])
        dist = np.abs(ours[:, None] - ref[None, :])
        assert dist.min(axis=0).max() < 1e-8 and dist.min(axis=1).max() < 1e-8


def test_power_sums():
    assert power_sums([1, 2, 3], 3) == [6, 14, 36]


@pytest.mark.parametrize("p", [Polynomial(), Polynomial([3])])
def test_roots_reject_constants(p):
    with pytest.raises(ValueError):
        poly_roots(p)
