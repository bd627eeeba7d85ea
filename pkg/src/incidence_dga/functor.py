"""Simplicial maps and the induced maps on stories and incidence algebras.

A vertex map ``pi: K' -> K`` pulls functions on ``K`` back to functions on
``K'``: the indicator of a simplex ``P`` goes to the sum of the indicators
of the simplices of ``K'`` whose image is ``P``.  On stories this is
applied statement-wise; on the incidence algebra the pullback is
``sigma' . phibar . lift``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .algebra import IncidenceElement, basis_pairs, differential, multiply
from .combination import accumulate
from .complex import Complex, Simplex
from .stories import (StoryElement, in_ideal, iter_ideal_generators, lift,
                      sigma)


class MapError(ValueError):
    pass


class VertexMap:
    """A total map from the vertices of ``source`` to those of ``target``."""

    __slots__ = ("source", "target", "assignment", "_pre")

    def __init__(self, source: Complex, target: Complex, assignment: Mapping):
        missing = [v for v in source.vertex_order if v not in assignment]
        if missing:
            raise MapError(f"source vertices not mapped: {missing}")
        extra = [v for v in assignment if v not in source.vertex_order]
        if extra:
            raise MapError(f"not source vertices: {extra}")
        tv = set(target.vertex_order)
        for v, w in assignment.items():
            if w not in tv:
                raise MapError(f"image {w!r} of {v!r} is not a target vertex")
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        self._pre = None

    def __call__(self, v):
        return self.assignment[v]

    def image_set(self, s: Simplex) -> frozenset:
        return frozenset(self.assignment[v] for v in s)

    def image(self, s: Simplex) -> Simplex | None:
        """Image of a source simplex as a target simplex, or None if the
        image vertex set is not a simplex of the target."""
        verts = self.image_set(s)
        key = tuple(sorted(verts, key=lambda v: self.target.key([v])))
        return key if key in self.target else None

    def preimages(self, s: Simplex) -> list[Simplex]:
        """Source simplices whose image is exactly ``s``."""
        if self._pre is None:
            pre: dict = {}
            for t in self.source:
                img = self.image(t)
                if img is not None:
                    pre.setdefault(img, []).append(t)
            self._pre = pre
        return self._pre.get(s, [])

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{u}->{w}" for u, w in self.assignment.items())
        return f"VertexMap({body})"


def identity_map(c: Complex) -> VertexMap:
    return VertexMap(c, c, {v: v for v in c.vertex_order})


def compose(m2: VertexMap, m1: VertexMap) -> VertexMap:
    """The map ``K'' -> K`` obtained by following ``m2: K'' -> K'`` with ``m1: K' -> K``."""
    if m2.target != m1.source:
        raise MapError("codomain of the first map differs from the domain of the second")
    return VertexMap(m2.source, m1.target, {v: m1(m2(v)) for v in m2.source.vertex_order})


def is_simplicial(m: VertexMap) -> bool:
    return all(m.image(s) is not None for s in m.source)


def image_sequence(m: VertexMap, w) -> tuple[frozenset, ...]:
    """Statement-wise image of a source story, as vertex sets."""
    return tuple(m.image_set(s) for s in w)


def pullback_stories(m: VertexMap, x: StoryElement) -> StoryElement:
    """Replace each story by the sum of its statement-wise preimages.

    Sequences with equal neighbours are not stories and are skipped.
    Simpliciality is not required.
    """
    if x.complex != m.target:
        raise MapError("element does not live over the target complex")
    out: dict = {}
    for w, a in x.items():
        choices = [m.preimages(s) for s in w]
        if not all(choices):
            continue
        for seq in product(*choices):
            if any(u == v for u, v in zip(seq, seq[1:])):
                continue
            accumulate(out, seq, a)
    return StoryElement._raw(m.source, out)


def _pullback(m: VertexMap, x: IncidenceElement, rng: random.Random | None = None) -> IncidenceElement:
    if x.complex != m.target:
        raise MapError("element does not live over the target complex")
    return sigma(pullback_stories(m, lift(x, rng)))


def pullback_algebra(m: VertexMap, x: IncidenceElement, rng: random.Random | None = None) -> IncidenceElement:
    """The induced homomorphism ``I(K) -> I(K')`` for a simplicial map.

    ``rng`` randomises the section used to lift ``x`` to stories; the
    result does not depend on it.
    """
    if not is_simplicial(m):
        raise MapError("pullback_algebra needs a simplicial map")
    return _pullback(m, x, rng)


@dataclass
class DifferentiabilityReport:
    simplicial: bool
    multiplicative: bool
    commutes: bool
    ideal_preserved: bool
    max_degree: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.simplicial and self.multiplicative and self.commutes and self.ideal_preserved


def check_differentiable(m: VertexMap, max_degree: int) -> DifferentiabilityReport:
    """Exhaustive check of the pullback up to ``max_degree``.

    * multiplicative: ``phi(x y) = phi(x) phi(y)`` for basis pairs with
      ``deg x + deg y <= max_degree``;
    * commutes: ``phi(d x) = d' phi(x)`` for basis pairs of degree
      ``<= max_degree``;
    * ideal_preserved: every ideal generator of degree ``1..max_degree``
      is pulled back into the ideal of the source.

    The first two are evaluated through ``sigma' . phibar . lift`` even
    when the map is not simplicial, so a failing map reports which
    property breaks.
    """
    K = m.target
    simplicial = is_simplicial(m)
    failures = [] if simplicial else ["map is not simplicial"]
    by_degree = {n: basis_pairs(K, n) for n in range(max_degree + 1)}
    phi = {}
    for pairs in by_degree.values():
        for pq in pairs:
            phi[pq] = _pullback(m, IncidenceElement._raw(K, {pq: 1}))

    multiplicative = True
    for r in range(max_degree + 1):
        for s in range(max_degree + 1 - r):
            for x in by_degree[r]:
                for y in by_degree[s]:
                    prod_ = phi[(x[0], y[1])] if x[1] == y[0] else None
                    lhs = prod_ if prod_ is not None else IncidenceElement._raw(m.source, {})
                    if lhs != multiply(phi[x], phi[y]):
                        multiplicative = False
                        failures.append(f"not multiplicative on {x} * {y}")
                        break
                if not multiplicative:
                    break
    commutes = True
    for n, pairs in by_degree.items():
        for pq in pairs:
            lhs = _pullback(m, differential(IncidenceElement._raw(K, {pq: 1})))
            if lhs != differential(phi[pq]):
                commutes = False
                failures.append(f"differential not preserved on {pq}")
                break
        if not commutes:
            break
    ideal_preserved = True
    for n in range(1, max_degree + 1):
        if len(K) < 2:
            break
        for g in iter_ideal_generators(K, n):
            if not in_ideal(pullback_stories(m, g)):
                ideal_preserved = False
                failures.append(f"ideal not preserved: generator {g!r}")
                break
        if not ideal_preserved:
            break
    return DifferentiabilityReport(simplicial, multiplicative, commutes, ideal_preserved,
                                   max_degree, failures)
