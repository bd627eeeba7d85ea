"""The incidence algebra of a simplicial complex and its differential.

Basis elements are pairs ``(P, Q)`` with ``P`` a face of ``Q``, written
``|P><Q|``; the degree of a pair is ``dim Q - dim P``.  The degree-zero
part (diagonal pairs) is the algebra of functions on the complex.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Iterable

from .combination import Combination, accumulate
from .complex import Complex, ComplexError

Pair = tuple  # (P, Q)


class IncidenceElement(Combination):
    __slots__ = ("complex",)

    def __init__(self, complex: Complex, terms=None):
        super().__init__(terms)
        self.complex = complex
        for p, q in self._terms:
            if p not in complex or q not in complex:
                raise ComplexError("basis pair uses a simplex outside the complex")
            if not set(p) <= set(q):
                raise ComplexError(f"{list(p)} is not a face of {list(q)}")

    def _new(self, terms):
        return IncidenceElement(self.complex, terms)

    def _context(self):
        return self.complex

    @classmethod
    def _from_clean(cls, proto, terms):
        return cls._raw(proto.complex, terms)

    @classmethod
    def _raw(cls, complex: Complex, terms: dict) -> "IncidenceElement":
        # trusted constructor: terms already validated and zero-free
        out = object.__new__(cls)
        out._terms = terms
        out.complex = complex
        return out

    def __mul__(self, other):
        if isinstance(other, IncidenceElement):
            return multiply(self, other)
        return super().__mul__(other)

    def degrees(self) -> set[int]:
        return {len(q) - len(p) for p, q in self._terms}

    def __repr__(self) -> str:
        from .textio import format_element
        return f"IncidenceElement({format_element(self)})"


def pair(c: Complex, p: Iterable, q: Iterable, coeff=1) -> IncidenceElement:
    """The element ``coeff * |P><Q|`` from two vertex lists."""
    return IncidenceElement(c, {(c.simplex(p), c.simplex(q)): coeff})


def identity(c: Complex) -> IncidenceElement:
    return IncidenceElement(c, {(s, s): 1 for s in c})


def zero(c: Complex) -> IncidenceElement:
    return IncidenceElement(c)


def basis_pairs(c: Complex, n: int) -> list[Pair]:
    """All pairs ``P <= Q`` with ``dim Q - dim P = n``, lexicographic in ``(P, Q)``."""
    out = []
    for q in c:
        k = len(q) - n
        if k < 1:
            continue
        out.extend((p, q) for p in combinations(q, k))
    out.sort(key=lambda pq: (c.key(pq[0]), c.key(pq[1])))
    return out


def multiply(x: IncidenceElement, y: IncidenceElement) -> IncidenceElement:
    """Bilinear extension of ``|P><Q| . |R><S| = delta_QR |P><S|``."""
    if x.complex != y.complex:
        raise ValueError("operands live over different complexes")
    by_left = defaultdict(list)
    for (r, s), b in y.items():
        by_left[r].append((s, b))
    out: dict = {}
    for (p, q), a in x.items():
        for s, b in by_left.get(q, ()):
            accumulate(out, (p, s), a * b)
    return IncidenceElement._from_clean(x, out)


def differential(x: IncidenceElement) -> IncidenceElement:
    """``d|P><Q| = |dP><Q| - (-1)^n |P><Qd|`` on a degree-``n`` pair, extended linearly.

    ``|dP>`` expands by the border (zero for a vertex) and ``<Qd|`` by the
    coborder, truncated to cofaces present in the complex.
    """
    c = x.complex
    out: dict = {}
    for (p, q), a in x.items():
        n = len(q) - len(p)
        for sign, face in c.faces(p):
            accumulate(out, (face, q), sign * a)
        s = a if n % 2 else -a
        for up, sign in c.cofaces(q).items():
            accumulate(out, (p, up), sign * s)
    return IncidenceElement._from_clean(x, out)


def degree_decompose(x: IncidenceElement) -> dict[int, IncidenceElement]:
    parts: dict[int, dict] = {}
    for (p, q), a in x.items():
        parts.setdefault(len(q) - len(p), {})[(p, q)] = a
    return {n: IncidenceElement._from_clean(x, parts[n]) for n in sorted(parts)}
