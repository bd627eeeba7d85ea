import random
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
import sympy

from incidence_dga import corpus
from incidence_dga.algebra import IncidenceElement, basis_pairs, pair
from incidence_dga.exhaustive import StoryTables
from incidence_dga.stories import (StoryElement, StoryError, fair_stories, ideal_generators,
                                   in_ideal, is_fair, iter_stories, kahler_d, lift, make_story,
                                   random_element, sigma, story_element, story_multiply,
                                   story_sign, verify_differential_ideal)


def S(c, *statements, coeff=1):
    return story_element(c, *statements, coeff=coeff)


def test_story_validation(tri):
    with pytest.raises(StoryError):
        make_story(tri, [1], [1])
    with pytest.raises(StoryError):
        make_story(tri, [1], [4])
    assert make_story(tri, [2, 1]) == ((1, 2),)


@pytest.mark.parametrize("statements, fair", [
    (([1], [1, 2], [1, 2, 3]), True),
    (([1], [1, 2, 3]), False),
    (([1, 2], [1]), False),
    (([2],), True),
])
def test_is_fair(tri, statements, fair):
    assert is_fair(tri, make_story(tri, *statements)) is fair


@pytest.mark.parametrize("statements, sign", [
    (([1], [1, 2], [1, 2, 3]), -1),
    (([1], [1, 3], [1, 2, 3]), 1),
    (([2],), 1),
])
def test_story_sign(tri, statements, sign):
    assert story_sign(tri, make_story(tri, *statements)) == sign


def test_story_sign_needs_fair(tri):
    with pytest.raises(StoryError):
        story_sign(tri, make_story(tri, [1], [1, 2, 3]))


def test_story_product_examples(tri):
    assert S(tri, [1], [1, 2]) * S(tri, [1, 2], [1, 2, 3]) == S(tri, [1], [1, 2], [1, 2, 3])
    assert (S(tri, [1], [1, 2]) * S(tri, [1, 3], [1, 2, 3])).is_zero()
    assert S(tri, [1]) * S(tri, [1]) == S(tri, [1])


def test_kahler_d_degree_zero(edge):
    expected = (S(edge, [2], [1]) - S(edge, [1], [2]) + S(edge, [1, 2], [1]) - S(edge, [1], [1, 2]))
    assert kahler_d(S(edge, [1])) == expected
    assert kahler_d(kahler_d(S(edge, [1]))).is_zero()
    assert sigma(kahler_d(S(edge, [1]))) == pair(edge, [1], [1, 2])


def test_kahler_d_rejects_mixed_degree(tri):
    with pytest.raises(StoryError):
        kahler_d(S(tri, [1]) + S(tri, [1], [2]))


def _dbar_via_products(c, w):
    """Oracle: w = <P0> d<P1> ... d<Pn>, so d w = d<P0> d<P1> ... d<Pn>,
    using only the degree-zero formula and the story product."""
    def d0(p):
        out = {}
        for q in c:
            if q != p:
                out[(q, p)] = out.get((q, p), 0) + 1
                out[(p, q)] = out.get((p, q), 0) - 1
        return StoryElement(c, out)
    acc = d0(w[0])
    for p in w[1:]:
        acc = story_multiply(acc, d0(p))
    return acc


def _story_via_products(c, w):
    def d0(p):
        out = {}
        for q in c:
            if q != p:
                out[(q, p)] = out.get((q, p), 0) + 1
                out[(p, q)] = out.get((p, q), 0) - 1
        return StoryElement(c, out)
    acc = StoryElement(c, {(w[0],): 1})
    for p in w[1:]:
        acc = story_multiply(acc, d0(p))
    return acc


@pytest.mark.parametrize("name", ["edge", "full triangle", "hollow triangle"])
def test_kahler_d_matches_product_oracle(name):
    c = corpus.named_complexes()[name]
    for n in range(3):
        for w in iter_stories(c, n):
            x = StoryElement(c, {w: 1})
            assert _story_via_products(c, w) == x
            assert kahler_d(x) == _dbar_via_products(c, w)


@pytest.mark.parametrize("name", ["edge", "full triangle", "hollow triangle", "tetrahedron boundary"])
def test_dbar_squared_zero(name):
    c = corpus.named_complexes()[name]
    for n in (0, 1):
        for w in iter_stories(c, n):
            assert kahler_d(kahler_d(StoryElement(c, {w: 1}))).is_zero()


def test_dbar_leibniz_random():
    rng = random.Random(3)
    c = corpus.tetrahedron_boundary()
    for _ in range(60):
        r, s = rng.randint(0, 2), rng.randint(0, 2)
        x = random_element(c, r, rng)
        y = random_element(c, s, rng, first=next(iter(x))[-1])
        assert kahler_d(x * y) == kahler_d(x) * y + (x * kahler_d(y)).scale((-1) ** r)


def test_sigma_examples(tri):
    assert sigma(S(tri, [1], [1, 2])) == pair(tri, [1], [1, 2], -1)
    assert sigma(S(tri, [1], [1, 2, 3])).is_zero()
    w, w2 = make_story(tri, [1], [1, 2], [1, 2, 3]), make_story(tri, [1], [1, 3], [1, 2, 3])
    g = StoryElement(tri, {w: story_sign(tri, w), w2: -story_sign(tri, w2)})
    assert sigma(g).is_zero()


def test_lift_examples(tri):
    assert lift(pair(tri, [1], [1, 2])) == S(tri, [1], [1, 2], coeff=-1)
    assert lift(pair(tri, [1], [1])) == S(tri, [1])
    assert lift(pair(tri, [1], [1, 2, 3])) == S(tri, [1], [1, 2], [1, 2, 3], coeff=-1)


def test_sigma_lift_identity_and_ideal_gap():
    rng = random.Random(11)
    c = corpus.full_simplex(3)
    for n in range(4):
        for pq in basis_pairs(c, n):
            x = IncidenceElement(c, {pq: Fraction(3, 2)})
            assert sigma(lift(x)) == x
            assert sigma(lift(x, rng)) == x
    for _ in range(50):
        s = random_element(c, rng.randint(0, 3), rng)
        assert in_ideal(lift(sigma(s)) - s)


def test_in_ideal_examples(tri):
    assert in_ideal(S(tri, [2], [1]))
    w, w2 = make_story(tri, [1], [1, 2], [1, 2, 3]), make_story(tri, [1], [1, 3], [1, 2, 3])
    assert in_ideal(StoryElement(tri, {w: story_sign(tri, w), w2: -story_sign(tri, w2)}))
    assert not in_ideal(S(tri, [1], [1, 2]))


def test_ideal_generators_edge(edge):
    gens = ideal_generators(edge, 1)
    stories = {next(iter(g)) for g in gens}
    assert all(len(g) == 1 for g in gens)
    # 6 one-stories, two of them fair
    assert len(gens) == 4
    assert make_story(edge, [2], [1]) in stories and make_story(edge, [1, 2], [1]) in stories


def test_ideal_generators_triangle_symmetric(tri):
    target = S(tri, [1], [1, 2], [1, 2, 3], coeff=-1) - S(tri, [1], [1, 3], [1, 2, 3])
    gens = ideal_generators(tri, 2)
    assert any(g == target or g == -target for g in gens)
    assert all(in_ideal(g) for g in gens)


def test_ideal_starts_in_degree_one(tri):
    with pytest.raises(StoryError):
        ideal_generators(tri, 0)


@pytest.mark.parametrize("c, n", [
    (corpus.edge(), 2), (corpus.full_triangle(), 3), (corpus.hollow_triangle(), 3)])
def test_verify_differential_ideal(c, n):
    rep = verify_differential_ideal(c, n)
    assert rep.ok, rep.violations
    assert rep.products_checked > 0


def test_section_independence(tri):
    c = corpus.full_simplex(3)
    for n in (2, 3):
        for p, q in basis_pairs(c, n):
            images = {repr(sigma(kahler_d(StoryElement(c, {w: story_sign(c, w)}))))
                      for w in fair_stories(c, p, q)}
            assert len(images) == 1


def test_sigma_rank_matches_sympy(tri):
    for n in range(3):
        pairs = basis_pairs(tri, n)
        stories = list(iter_stories(tri, n))
        m = sympy.zeros(len(pairs), len(stories))
        row = {pq: i for i, pq in enumerate(pairs)}
        for j, w in enumerate(stories):
            for pq, a in sigma(StoryElement(tri, {w: 1})).items():
                m[row[pq], j] = int(a)
        assert m.rank() == len(pairs) == StoryTables(tri).sigma_image(n).rank


# -- the vectorised machinery against the object path ------------------

@pytest.mark.parametrize("name", ["edge", "full triangle", "hollow triangle", "path"])
def test_tables_enumerate_all_stories(name):
    c = corpus.named_complexes()[name]
    t = StoryTables(c)
    for n in range(3):
        got = [t.to_story(r) for b in t.blocks(n) for r in b]
        assert got == list(iter_stories(c, n))


@pytest.mark.parametrize("name", ["full triangle", "hollow triangle", "tetrahedron boundary"])
def test_tables_signs_and_fairness(name):
    c = corpus.named_complexes()[name]
    t = StoryTables(c)
    for n in range(3):
        for rows in t.blocks(n):
            signs, fair = t.signs(rows), t.fair(rows)
            for r, e, f in zip(rows, signs, fair):
                w = t.to_story(r)
                assert bool(f) == is_fair(c, w)
                assert int(e) == (story_sign(c, w) if f else 0)


def _as_positions(c, x):
    return {(c.position(p), c.position(q)): int(a) for (p, q), a in x.items()}


@pytest.mark.parametrize("name", ["edge", "full triangle", "hollow triangle", "tetrahedron boundary"])
def test_fused_sigma_dbar_matches_object_path(name):
    c = corpus.named_complexes()[name]
    t = StoryTables(c)
    for n in range(3):
        for rows in t.blocks(n):
            zero = t.sigma_dbar_is_zero(rows)
            for r, z in zip(rows, zero):
                w = t.to_story(r)
                expected = sigma(kahler_d(StoryElement(c, {w: 1})))
                assert t.sigma_dbar(r) == _as_positions(c, expected)
                assert bool(z) == expected.is_zero()


def test_fused_sigma_dbar_degree_three_sample():
    c = corpus.full_simplex(4)
    t = StoryTables(c)
    rng = np.random.default_rng(5)
    blocks = list(t.blocks(3))
    for _ in range(40):
        rows = blocks[rng.integers(len(blocks))]
        pick = rows[rng.integers(len(rows), size=5)]
        zero = t.sigma_dbar_is_zero(pick)
        for r, z in zip(pick, zero):
            expected = sigma(kahler_d(StoryElement(c, {t.to_story(r): 1})))
            assert t.sigma_dbar(r) == _as_positions(c, expected)
            assert bool(z) == expected.is_zero()
    # near-fair stories exercise the insertion term
    for p, q in basis_pairs(c, 4)[:3]:
        for w in fair_stories(c, p, q)[:4]:
            skip = (w[0], w[2], w[3], w[4])
            r = np.array([[c.position(s) for s in skip]])
            expected = sigma(kahler_d(StoryElement(c, {skip: 1})))
            assert bool(t.sigma_dbar_is_zero(r)[0]) == expected.is_zero()
            assert t.sigma_dbar(r[0]) == _as_positions(c, expected)
