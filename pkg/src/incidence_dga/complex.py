"""Finite simplicial complexes with a fixed vertex enumeration.

Simplices are tuples of vertices sorted by the enumeration; every sign in
the package (incidence coefficients, story signs) is read off from that
order, so two complexes with the same simplices but different enumerations
are different objects.
"""

from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .combination import Combination, accumulate
from .linalg import rank

Vertex = Hashable
Simplex = tuple


class ComplexError(ValueError):
    pass


class Complex:
    """An abstract simplicial complex, closed under non-empty subsets.

    Use :func:`build_complex` rather than calling the constructor.
    """

    __slots__ = ("vertex_order", "simplices", "_vindex", "_position",
                 "_faces", "_cofaces", "_by_dim")

    def __init__(self, vertex_order: Sequence[Vertex], simplices: Iterable[Simplex]):
        self.vertex_order = tuple(vertex_order)
        self._vindex = {v: i for i, v in enumerate(self.vertex_order)}
        ordered = sorted(set(simplices), key=lambda s: (len(s), self.key(s)))
        self.simplices: tuple[Simplex, ...] = tuple(ordered)
        self._position = {s: i for i, s in enumerate(self.simplices)}

        self._faces: dict[Simplex, tuple[tuple[int, Simplex], ...]] = {}
        self._cofaces: dict[Simplex, dict[Simplex, int]] = {s: {} for s in self.simplices}
        self._by_dim: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            self._by_dim.setdefault(len(s) - 1, []).append(s)
            faces = []
            if len(s) > 1:
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    sign = -1 if i % 2 else 1
                    faces.append((sign, face))
                    self._cofaces[face][s] = sign
            self._faces[s] = tuple(faces)

    # -- basic queries -------------------------------------------------

    def key(self, simplex: Iterable[Vertex]) -> tuple[int, ...]:
        """Enumeration indices of a simplex; the lexicographic sort key."""
        return tuple(self._vindex[v] for v in simplex)

    def simplex(self, vertices: Iterable[Vertex]) -> Simplex:
        """Canonical (enumeration-sorted) form of a vertex set in this complex."""
        vs = list(vertices)
        for v in vs:
            if v not in self._vindex:
                raise ComplexError(f"unknown vertex {v!r}")
        if len(set(vs)) != len(vs):
            raise ComplexError(f"repeated vertex in {vs!r}")
        s = tuple(sorted(vs, key=self._vindex.__getitem__))
        if s not in self._position:
            raise ComplexError(f"{_fmt(s)} is not a simplex of the complex")
        return s

    def position(self, simplex: Simplex) -> int:
        return self._position[simplex]

    @property
    def dim(self) -> int:
        return max(self._by_dim)

    def faces(self, simplex: Simplex) -> tuple[tuple[int, Simplex], ...]:
        """Pairs ``(incidence sign, face)`` for the codimension-one faces."""
        return self._faces[simplex]

    def cofaces(self, simplex: Simplex) -> dict[Simplex, int]:
        """Map ``coface -> incidence sign of the added vertex in the coface``."""
        return self._cofaces[simplex]

    def step_sign(self, lower: Simplex, upper: Simplex) -> int:
        """``eps`` of the vertex added going from ``lower`` to ``upper``; 0 if
        ``upper`` is not ``lower`` plus exactly one vertex."""
        return self._cofaces[lower].get(upper, 0)

    def __contains__(self, simplex) -> bool:
        return simplex in self._position

    def __iter__(self):
        return iter(self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.vertex_order == other.vertex_order and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash((self.vertex_order, self.simplices))

    def __repr__(self) -> str:
        return f"Complex(vertices={list(self.vertex_order)!r}, simplices={len(self)})"

    def facets(self) -> list[Simplex]:
        return [s for s in self.simplices if not self._cofaces[s]]


def build_complex(vertex_order: Sequence[Vertex], facets: Iterable[Iterable[Vertex]] = ()) -> Complex:
    """Downward closure of ``facets`` together with every singleton."""
    vertex_order = tuple(vertex_order)
    if not vertex_order:
        raise ComplexError("a complex needs at least one vertex")
    vindex = {}
    for i, v in enumerate(vertex_order):
        if v in vindex:
            raise ComplexError(f"duplicate vertex {v!r} in enumeration")
        vindex[v] = i
    simplices = {(v,) for v in vertex_order}
    for facet in facets:
        f = list(facet)
        if not f:
            raise ComplexError("empty facet")
        for v in f:
            if v not in vindex:
                raise ComplexError(f"unknown vertex {v!r}")
        if len(set(f)) != len(f):
            raise ComplexError(f"repeated vertex in facet {f!r}")
        f.sort(key=vindex.__getitem__)
        for k in range(1, len(f) + 1):
            simplices.update(combinations(f, k))
    return Complex(vertex_order, simplices)


def skeleton(c: Complex, n: int) -> list[Simplex]:
    return list(c._by_dim.get(n, ()))


def incidence_coeff(c: Complex, v: Vertex, p: Simplex) -> int:
    """``(-1)**i`` where ``i`` is the position of ``v`` in ``p``."""
    try:
        i = p.index(v)
    except ValueError:
        raise ComplexError(f"vertex {v!r} is not in {_fmt(p)}") from None
    return -1 if i % 2 else 1


class Chain(Combination):
    """Homogeneous combination of simplices of one dimension.

    The same type holds chains (kets) and cochains (bras); which one is
    meant is decided by the operator applied.
    """

    __slots__ = ("dim",)

    def __init__(self, terms=None, dim: int | None = None):
        super().__init__(terms)
        dims = {len(s) - 1 for s in self._terms}
        if len(dims) > 1:
            raise ComplexError(f"chain mixes dimensions {sorted(dims)}")
        self.dim = dims.pop() if dims else dim

    def _new(self, terms):
        return Chain(terms, self.dim)

    def _context(self):
        return None

    def __repr__(self) -> str:
        if not self._terms:
            return "Chain(0)"
        body = " + ".join(f"{c}*{_fmt(s)}" for s, c in self._terms.items())
        return f"Chain({body})"


def basis_chain(c: Complex, vertices: Iterable[Vertex]) -> Chain:
    return Chain({c.simplex(vertices): 1})


def border(c: Complex, x: Chain) -> Chain:
    """``d|P> = sum_v eps_vP |P - v>``; zero on vertices."""
    x = _as_chain(x)
    out: dict = {}
    for s, coef in x.items():
        for sign, face in c.faces(s):
            accumulate(out, face, sign * coef)
    return Chain(out, None if x.dim is None else x.dim - 1)


def coborder(c: Complex, x: Chain) -> Chain:
    """Adjoint of :func:`border`: ``<P|d = sum_u eps_{u,P+u} <P+u|``."""
    x = _as_chain(x)
    out: dict = {}
    for s, coef in x.items():
        for up, sign in c.cofaces(s).items():
            accumulate(out, up, sign * coef)
    return Chain(out, None if x.dim is None else x.dim + 1)


def _as_chain(x) -> Chain:
    return x if isinstance(x, Chain) else Chain(x)


def border_columns(c: Complex, n: int) -> list[dict]:
    """Sparse columns of the border map from dimension ``n`` to ``n - 1``."""
    return [dict((f, s) for s, f in c.faces(p)) for p in skeleton(c, n)]


def betti(c: Complex) -> list[int]:
    """Rational Betti numbers from exact ranks of the border matrices."""
    top = c.dim
    ranks = [0] * (top + 2)
    for n in range(1, top + 1):
        ranks[n] = rank(border_columns(c, n))
    return [len(skeleton(c, n)) - ranks[n] - ranks[n + 1] for n in range(top + 1)]


def _fmt(s: Simplex) -> str:
    return "{" + ",".join(str(v) for v in s) + "}"
