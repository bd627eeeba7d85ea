import random
from fractions import Fraction

import pytest
import sympy

from incidence_dga import corpus
from incidence_dga.algebra import (IncidenceElement, basis_pairs, degree_decompose,
                                   differential, identity, multiply, pair)
from incidence_dga.complex import ComplexError
from incidence_dga.properties import random_homogeneous
from incidence_dga.stories import kahler_d, lift, sigma


def _brute_pairs(c, n):
    return sorted((p, q) for p in c for q in c if set(p) <= set(q) and len(q) - len(p) == n)


@pytest.mark.parametrize("n, count", [(0, 7), (1, 9), (2, 3), (3, 0)])
def test_basis_pair_counts(tri, n, count):
    assert len(_brute_pairs(tri, n)) == count
    assert sorted(basis_pairs(tri, n)) == _brute_pairs(tri, n)


def test_degree_one_split(tri):
    pairs = basis_pairs(tri, 1)
    assert sum(len(p) == 1 for p, q in pairs) == 6
    assert sum(len(p) == 2 for p, q in pairs) == 3


def test_basis_order_is_lexicographic(tri):
    pairs = basis_pairs(tri, 1)
    assert pairs == sorted(pairs, key=lambda pq: (tri.key(pq[0]), tri.key(pq[1])))


def test_product_examples(tri):
    assert pair(tri, [1], [1, 2]) * pair(tri, [1, 2], [1, 2, 3]) == pair(tri, [1], [1, 2, 3])
    assert (pair(tri, [1], [1, 2]) * pair(tri, [1, 3], [1, 2, 3])).is_zero()
    assert pair(tri, [1], [1]) * pair(tri, [1], [1]) == pair(tri, [1], [1])


def test_pairs_must_be_comparable(tri):
    with pytest.raises(ComplexError):
        pair(tri, [1, 2], [1])


def test_mismatched_complexes(tri, edge):
    with pytest.raises(ValueError):
        multiply(pair(tri, [1], [1]), pair(edge, [1], [1]))


def _dense(x):
    c = x.complex
    m = sympy.zeros(len(c), len(c))
    for (p, q), a in x.items():
        m[c.position(p), c.position(q)] = sympy.Rational(a.numerator, a.denominator)
    return m


@pytest.mark.parametrize("seed", range(5))
def test_product_matches_matrix_product(seed):
    rng = random.Random(seed)
    c = corpus.tetrahedron_boundary()
    for _ in range(20):
        x = random_homogeneous(c, rng.randint(0, 2), rng, terms=5)
        y = random_homogeneous(c, rng.randint(0, 2), rng, terms=5)
        assert _dense(x * y) == _dense(x) * _dense(y)


def test_products_of_basis_pairs_are_basis_pairs_or_zero(tri):
    basis = [pq for n in range(3) for pq in basis_pairs(tri, n)]
    for x in basis:
        for y in basis:
            z = pair(tri, *x) * pair(tri, *y)
            if x[1] == y[0]:
                assert z == IncidenceElement(tri, {(x[0], y[1]): 1})
                assert len(z.degrees()) == 1 and z.degrees() == {len(y[1]) - len(x[0])}
            else:
                assert z.is_zero()


def test_identity_is_two_sided(tri):
    one = identity(tri)
    for n in range(3):
        for pq in basis_pairs(tri, n):
            b = IncidenceElement(tri, {pq: 1})
            assert one * b == b == b * one


def test_differential_examples(tri, edge):
    assert differential(pair(tri, [1], [1])) == pair(tri, [1], [1, 2]) + pair(tri, [1], [1, 3])
    assert differential(pair(tri, [1], [1, 2])) == pair(tri, [1], [1, 2, 3])
    assert differential(differential(pair(edge, [1], [1]))).is_zero()


def test_differential_raises_degree(tri):
    for n in range(3):
        for pq in basis_pairs(tri, n):
            d = differential(IncidenceElement(tri, {pq: 1}))
            assert d.degrees() <= {n + 1}


def test_degree_zero_leibniz_worked_identity(edge):
    a = pair(edge, [1], [1])
    lhs = differential(a * a)
    assert lhs == pair(edge, [1], [1, 2])
    assert differential(a) * a + a * differential(a) == lhs


def test_degree_decompose(tri):
    x = pair(tri, [1], [1]) + pair(tri, [1], [1, 2], 2)
    parts = degree_decompose(x)
    assert list(parts) == [0, 1]
    assert parts[0] == pair(tri, [1], [1]) and parts[1] == pair(tri, [1], [1, 2], 2)
    assert degree_decompose(IncidenceElement(tri)) == {}
    assert degree_decompose(pair(tri, [1], [1, 2, 3])) == {2: pair(tri, [1], [1, 2, 3])}


@pytest.mark.parametrize("name", ["edge", "full triangle", "hollow triangle", "tetrahedron boundary", "path"])
def test_d_squared_and_leibniz_exhaustive(name):
    c = corpus.named_complexes()[name]
    basis = [IncidenceElement(c, {pq: 1}) for n in range(c.dim + 1) for pq in basis_pairs(c, n)]
    for x in basis:
        assert differential(differential(x)).is_zero()
    for x in basis:
        (r,) = x.degrees()
        for y in basis:
            assert differential(x * y) == differential(x) * y + (x * differential(y)).scale((-1) ** r)


def test_leibniz_random_rational_combinations():
    rng = random.Random(7)
    c = corpus.full_simplex(3)
    for _ in range(100):
        r, s = rng.randint(0, 3), rng.randint(0, 3)
        x, y = random_homogeneous(c, r, rng, 4), random_homogeneous(c, s, rng, 4)
        assert differential(x * y) == differential(x) * y + (x * differential(y)).scale((-1) ** r)


@pytest.mark.parametrize("name", ["full triangle", "tetrahedron boundary", "full 4-simplex"])
def test_explicit_d_agrees_with_envelope(name):
    c = corpus.named_complexes()[name]
    for n in range(min(c.dim, 3) + 1):
        for pq in basis_pairs(c, n):
            x = IncidenceElement(c, {pq: 1})
            assert differential(x) == sigma(kahler_d(lift(x)))


def test_mixed_degree_differential_is_degreewise(tri):
    x = pair(tri, [1], [1], Fraction(2, 3)) + pair(tri, [2], [1, 2], -5)
    assert differential(x) == sum((differential(p) for p in degree_decompose(x).values()),
                                  IncidenceElement(tri))
