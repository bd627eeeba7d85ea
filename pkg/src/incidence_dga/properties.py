"""The property suite: each check returns a :class:`CheckResult`.

Used by ``incidence-dga props`` and by the acceptance tests.  Every
comparison is exact equality of rational coefficients.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .algebra import (IncidenceElement, basis_pairs, degree_decompose,
                      differential, identity, multiply)
from .complex import (Chain, Complex, betti, border, coborder, incidence_coeff,
                      skeleton)
from .exhaustive import StoryTables
from .functor import (VertexMap, check_differentiable, compose, identity_map,
                      pullback_algebra)
from .stories import (StoryElement, in_ideal, iter_symmetric_generators,
                      iter_stories, kahler_d, lift, random_element, sigma,
                      story_multiply, verify_differential_ideal)
from .textio import format_element, parse_element


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float = 0.0
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} ({self.seconds:.2f}s)"


def _timed(name: str, fn: Callable[[list[str]], None]) -> CheckResult:
    details: list[str] = []
    t0 = time.perf_counter()
    fn(details)
    return CheckResult(name, not details, time.perf_counter() - t0, details)


def _basis(c: Complex, p, q) -> IncidenceElement:
    return IncidenceElement._raw(c, {(p, q): Fraction(1)})


def random_homogeneous(c: Complex, n: int, rng: random.Random, terms: int = 3) -> IncidenceElement:
    pairs = basis_pairs(c, n)
    out = {}
    for _ in range(terms):
        pq = rng.choice(pairs)
        out[pq] = out.get(pq, 0) + Fraction(rng.choice([-3, -1, 1, 2, 7]), rng.choice([1, 2, 5]))
    return IncidenceElement(c, out)


# -- border and coborder -----------------------------------------------

def check_border(complexes: Mapping[str, Complex]) -> CheckResult:
    def run(errs):
        for name, c in complexes.items():
            for s in c:
                if border(c, border(c, Chain({s: 1}))):
                    errs.append(f"{name}: border^2 != 0 on {s}")
                if coborder(c, coborder(c, Chain({s: 1}))):
                    errs.append(f"{name}: coborder^2 != 0 on {s}")
            for n in range(1, c.dim + 1):
                for p in skeleton(c, n):
                    down = border(c, Chain({p: 1}))
                    for q in skeleton(c, n - 1):
                        up = coborder(c, Chain({q: 1}))
                        if down.coeff(q) != up.coeff(p):
                            errs.append(f"{name}: border/coborder not adjoint at {q} < {p}")
    return _timed("border^2 = 0 and border/coborder adjointness", run)


def check_sign_identity(complexes: Mapping[str, Complex]) -> CheckResult:
    """``eps(v,P) eps(u,P-v) = -eps(u,P) eps(v,P-u)`` for ``u != v`` in ``P``."""
    def run(errs):
        for name, c in complexes.items():
            for p in c:
                for v in p:
                    for u in p:
                        if u == v:
                            continue
                        pv = tuple(x for x in p if x != v)
                        pu = tuple(x for x in p if x != u)
                        lhs = incidence_coeff(c, v, p) * incidence_coeff(c, u, pv)
                        rhs = -incidence_coeff(c, u, p) * incidence_coeff(c, v, pu)
                        if lhs != rhs:
                            errs.append(f"{name}: sign identity fails for {u}, {v} in {p}")
    return _timed("incidence sign identity", run)


# -- incidence algebra -------------------------------------------------

def check_incidence_dga(complexes: Mapping[str, Complex], *, seed: int = 0,
                        samples: int = 500) -> CheckResult:
    """d^2 = 0 on basis pairs; graded Leibniz on all pairs of basis pairs
    and on ``samples`` random homogeneous pairs per complex."""
    def run(errs):
        rng = random.Random(seed)
        for name, c in complexes.items():
            top = c.dim
            basis = [pq for n in range(top + 1) for pq in basis_pairs(c, n)]
            elem = {pq: _basis(c, *pq) for pq in basis}
            d = {pq: differential(elem[pq]) for pq in basis}
            for pq in basis:
                if differential(d[pq]):
                    errs.append(f"{name}: d^2 != 0 on {pq}")
            for x in basis:
                r = len(x[1]) - len(x[0])
                for y in basis:
                    prod_ = elem[(x[0], y[1])] if x[1] == y[0] else None
                    lhs = differential(prod_) if prod_ is not None else None
                    rhs = multiply(d[x], elem[y])
                    rhs = rhs + (multiply(elem[x], d[y]) if r % 2 == 0 else -multiply(elem[x], d[y]))
                    if (lhs is None and rhs) or (lhs is not None and lhs != rhs):
                        errs.append(f"{name}: Leibniz fails on {x} * {y}")
            for _ in range(samples):
                r, s = rng.randint(0, top), rng.randint(0, top)
                x, y = random_homogeneous(c, r, rng), random_homogeneous(c, s, rng)
                lhs = differential(x * y)
                rhs = differential(x) * y + (x * differential(y)).scale((-1) ** r)
                if lhs != rhs:
                    errs.append(f"{name}: Leibniz fails on random pair {x!r}, {y!r}")
    return _timed("d^2 = 0 and graded Leibniz in the incidence algebra", run)


def check_unit_and_associativity(complexes: Mapping[str, Complex], *, seed: int = 0,
                                 samples: int = 100) -> CheckResult:
    def run(errs):
        rng = random.Random(seed)
        for name, c in complexes.items():
            one = identity(c)
            for n in range(c.dim + 1):
                for pq in basis_pairs(c, n):
                    b = _basis(c, *pq)
                    if one * b != b or b * one != b:
                        errs.append(f"{name}: identity fails on {pq}")
            for _ in range(samples):
                xs = [random_homogeneous(c, rng.randint(0, c.dim), rng) for _ in range(3)]
                if (xs[0] * xs[1]) * xs[2] != xs[0] * (xs[1] * xs[2]):
                    errs.append(f"{name}: product not associative")
                parts = degree_decompose(xs[0] + xs[1])
                if sum(parts.values(), IncidenceElement(c)) != xs[0] + xs[1]:
                    errs.append(f"{name}: degree decomposition does not sum back")
    return _timed("unit, associativity, degree decomposition", run)


# -- stories -----------------------------------------------------------

def check_sigma_isomorphism(complexes: Mapping[str, Complex], max_degree: int = 3, *,
                            seed: int = 0, samples: int = 500) -> CheckResult:
    """sigma is onto each incidence degree with rank = number of basis
    pairs, kills every ideal generator, and preserves products."""
    def run(errs):
        rng = random.Random(seed)
        for name, c in complexes.items():
            tables = StoryTables(c)
            for n in range(max_degree + 1):
                img = tables.sigma_image(n)
                pairs = basis_pairs(c, n)
                if img.sign_mismatch:
                    errs.append(f"{name}: degree {n}: sigma nonzero on unfair stories "
                                f"or zero on fair ones ({img.sign_mismatch})")
                if img.rank != len(pairs) or img.targets != set(pairs):
                    errs.append(f"{name}: degree {n}: rank {img.rank} vs {len(pairs)} basis pairs")
                if n >= 1:
                    for g in iter_symmetric_generators(c, n):
                        if sigma(g):
                            errs.append(f"{name}: symmetric generator {g!r} not in ker sigma")
            if len(c) < 2:
                continue
            for _ in range(samples):
                m, k = rng.randint(0, 2), rng.randint(0, 2)
                x = random_element(c, m, rng, fair_bias=0.8)
                first = next(iter(x))[-1] if rng.random() < 0.7 else None
                y = random_element(c, k, rng, first=first, fair_bias=0.8)
                if sigma(story_multiply(x, y)) != multiply(sigma(x), sigma(y)):
                    errs.append(f"{name}: sigma does not preserve the product of {x!r} and {y!r}")
    return _timed(f"sigma: rank, kernel and products up to degree {max_degree}", run)


def check_differential_ideal(complexes: Mapping[str, Complex], max_degree: int = 3, *,
                             seed: int = 0, samples: int = 100) -> CheckResult:
    def run(errs):
        for name, c in complexes.items():
            rep = verify_differential_ideal(c, max_degree, seed=seed, samples=samples)
            errs.extend(f"{name}: {v}" for v in rep.violations)
    return _timed(f"differential ideal closure up to degree {max_degree}", run)


def check_kahler(complexes: Mapping[str, Complex], *, seed: int = 0, samples: int = 100) -> CheckResult:
    """dbar^2 = 0 on degree 0 and 1 stories; graded Leibniz for dbar."""
    def run(errs):
        rng = random.Random(seed)
        for name, c in complexes.items():
            if len(c) < 2:
                continue
            for n in (0, 1):
                for w in iter_stories(c, n):
                    x = StoryElement._raw(c, {w: Fraction(1)})
                    if kahler_d(kahler_d(x)):
                        errs.append(f"{name}: dbar^2 != 0 on {w}")
            for _ in range(samples):
                r, s = rng.randint(0, 2), rng.randint(0, 2)
                x = random_element(c, r, rng)
                y = random_element(c, s, rng, first=next(iter(x))[-1])
                lhs = kahler_d(story_multiply(x, y))
                rhs = story_multiply(kahler_d(x), y) + story_multiply(x, kahler_d(y)).scale((-1) ** r)
                if lhs != rhs:
                    errs.append(f"{name}: dbar Leibniz fails on {x!r}, {y!r}")
    return _timed("dbar^2 = 0 and graded Leibniz for dbar", run)


def check_induced_differential(complexes: Mapping[str, Complex], max_degree: int = 3, *,
                               seeds: int = 10) -> CheckResult:
    """d = sigma . dbar . lift on basis pairs, for the canonical section and
    ``seeds`` randomised ones."""
    def run(errs):
        for name, c in complexes.items():
            for n in range(max_degree + 1):
                for pq in basis_pairs(c, n):
                    x = _basis(c, *pq)
                    dx = differential(x)
                    if sigma(kahler_d(lift(x))) != dx:
                        errs.append(f"{name}: d != sigma dbar lift on {pq}")
                    if len(pq[1]) - len(pq[0]) < 2:
                        continue
                    for seed in range(seeds):
                        if sigma(kahler_d(lift(x, random.Random(seed)))) != dx:
                            errs.append(f"{name}: section dependence on {pq} (seed {seed})")
    return _timed(f"d = sigma . dbar . lift up to degree {max_degree}, section-independent", run)


# -- functor -----------------------------------------------------------

def check_maps(maps: Mapping[str, VertexMap], max_degree: int = 2) -> CheckResult:
    def run(errs):
        for name, m in maps.items():
            rep = check_differentiable(m, max_degree)
            if not rep.ok:
                errs.append(f"{name}: " + "; ".join(rep.failures))
    return _timed(f"pullbacks of simplicial maps are differentiable (degree <= {max_degree})", run)


def check_contravariance(pairs: Mapping[str, tuple[VertexMap, VertexMap]], max_degree: int = 2) -> CheckResult:
    def run(errs):
        for name, (m2, m1) in pairs.items():
            K = m1.target
            both = compose(m2, m1)
            for n in range(max_degree + 1):
                for pq in basis_pairs(K, n):
                    x = _basis(K, *pq)
                    if pullback_algebra(both, x) != pullback_algebra(m2, pullback_algebra(m1, x)):
                        errs.append(f"{name}: composition law fails on {pq}")
            for c in (K, m1.source, m2.source):
                if pullback_algebra(identity_map(c), identity(c)) != identity(c):
                    errs.append(f"{name}: identity not pulled back to identity")
            if pullback_algebra(both, identity(K)) != identity(m2.source):
                errs.append(f"{name}: pullback is not unital")
    return _timed("contravariant composition law", run)


def check_nonsimplicial_rejected(m: VertexMap, max_degree: int = 2) -> CheckResult:
    """A non-simplicial map must fail the ideal-preservation check."""
    def run(errs):
        rep = check_differentiable(m, max_degree)
        if rep.ideal_preserved:
            errs.append(f"{m!r}: ideal preserved (simplicial={rep.simplicial}, "
                        f"multiplicative={rep.multiplicative}, commutes={rep.commutes})")
    return _timed("non-simplicial map fails ideal preservation", run)


# -- homology and bookkeeping ------------------------------------------

def check_betti(expected: Mapping[str, tuple[Complex, list[int]]]) -> CheckResult:
    def run(errs):
        for name, (c, want) in expected.items():
            got = betti(c)
            if got != list(want):
                errs.append(f"{name}: betti {got}, expected {list(want)}")
    return _timed("Betti numbers", run)


def check_euler(complexes: Mapping[str, Complex]) -> CheckResult:
    """Alternating sum of Betti numbers equals the alternating simplex count."""
    def run(errs):
        for name, c in complexes.items():
            b = betti(c)
            chi = sum((-1) ** n * len(skeleton(c, n)) for n in range(c.dim + 1))
            if chi != sum((-1) ** n * x for n, x in enumerate(b)):
                errs.append(f"{name}: Euler characteristic mismatch")
    return _timed("Euler characteristic", run)


def check_basis_counts(complexes: Mapping[str, Complex]) -> CheckResult:
    """basis_pairs against brute-force enumeration of comparable pairs."""
    def run(errs):
        for name, c in complexes.items():
            for n in range(c.dim + 2):
                brute = sorted((p, q) for p in c for q in c
                               if set(p) <= set(q) and len(q) - len(p) == n)
                if sorted(basis_pairs(c, n)) != brute:
                    errs.append(f"{name}: basis_pairs({n}) disagrees with enumeration")
    return _timed("incidence basis bookkeeping", run)


def check_roundtrip(complexes: Mapping[str, Complex], *, seed: int = 0, samples: int = 50) -> CheckResult:
    def run(errs):
        rng = random.Random(seed)
        for name, c in complexes.items():
            for _ in range(samples):
                x = random_homogeneous(c, rng.randint(0, c.dim), rng)
                if parse_element(format_element(x), c) != x:
                    errs.append(f"{name}: round trip fails for {format_element(x)}")
                if len(c) > 1:
                    s = random_element(c, rng.randint(0, 3), rng)
                    if parse_element(format_element(s), c) != s:
                        errs.append(f"{name}: round trip fails for {format_element(s)}")
    return _timed("print/parse round trip", run)


def complex_suite(complexes: Mapping[str, Complex], *, seed: int = 0) -> list[CheckResult]:
    """Every per-complex property."""
    return [
        check_border(complexes),
        check_sign_identity(complexes),
        check_incidence_dga(complexes, seed=seed),
        check_unit_and_associativity(complexes, seed=seed),
        check_kahler(complexes, seed=seed),
        check_sigma_isomorphism(complexes, seed=seed),
        check_differential_ideal(complexes, seed=seed),
        check_induced_differential(complexes),
        check_euler(complexes),
        check_basis_counts(complexes),
        check_roundtrip(complexes, seed=seed),
    ]


def full_suite(*, seed: int = 0) -> list[CheckResult]:
    """The per-complex suite on the whole corpus, plus the map checks and
    the fixed homology and dimension values."""
    from . import corpus as C

    complexes = C.corpus()
    results = complex_suite(complexes, seed=seed)
    results.append(check_maps(C.simplicial_maps()))
    results.append(check_contravariance(C.composable_pairs()))
    results.append(check_nonsimplicial_rejected(C.pi2()))
    expected = {
        "hollow triangle": (C.hollow_triangle(), [1, 1]),
        "tetrahedron boundary": (C.tetrahedron_boundary(), [1, 0, 1]),
        "two points": (C.two_points(), [2]),
    }
    for k in range(5):
        expected[f"full {k}-simplex"] = (C.full_simplex(k), [1] + [0] * k)
    results.append(check_betti(expected))

    def counts(errs):
        got = [len(basis_pairs(C.full_triangle(), n)) for n in range(3)]
        if got != [7, 9, 3]:
            errs.append(f"full triangle basis sizes {got}")
    results.append(_timed("full triangle basis sizes (7, 9, 3)", counts))
    return results
