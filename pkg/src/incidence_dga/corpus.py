"""Named complexes and maps used by the property suite."""

from __future__ import annotations

import random
from itertools import combinations

from .complex import Complex, build_complex
from .functor import VertexMap, compose, identity_map


def edge() -> Complex:
    return build_complex([1, 2], [[1, 2]])


def full_triangle() -> Complex:
    return build_complex([1, 2, 3], [[1, 2, 3]])


def hollow_triangle() -> Complex:
    return build_complex([1, 2, 3], [[1, 2], [1, 3], [2, 3]])


def tetrahedron_boundary() -> Complex:
    return build_complex([1, 2, 3, 4], list(combinations([1, 2, 3, 4], 3)))


def full_simplex(n: int) -> Complex:
    vs = list(range(1, n + 2))
    return build_complex(vs, [vs])


def path() -> Complex:
    """1 - 2 - 3."""
    return build_complex([1, 2, 3], [[1, 2], [2, 3]])


def primed_path() -> Complex:
    """1' - 2' - 3'."""
    return build_complex(["1'", "2'", "3'"], [["1'", "2'"], ["2'", "3'"]])


def two_points() -> Complex:
    return build_complex([1, 2])


def random_complex(seed: int, max_vertices: int = 6, max_facet: int = 4) -> Complex:
    """Random complex on at most ``max_vertices`` vertices with a shuffled
    enumeration, so signs do not follow the vertex labels."""
    rng = random.Random(seed)
    nv = rng.randint(2, max_vertices)
    labels = [f"v{i}" for i in range(nv)]
    order = labels[:]
    rng.shuffle(order)
    facets = [rng.sample(labels, rng.randint(1, min(max_facet, nv)))
              for _ in range(rng.randint(1, 5))]
    return build_complex(order, facets)


def named_complexes() -> dict[str, Complex]:
    return {
        "edge": edge(),
        "full triangle": full_triangle(),
        "hollow triangle": hollow_triangle(),
        "tetrahedron boundary": tetrahedron_boundary(),
        "full 4-simplex": full_simplex(4),
        "path": path(),
        "primed path": primed_path(),
    }


def corpus(n_random: int = 20) -> dict[str, Complex]:
    out = named_complexes()
    for seed in range(n_random):
        out[f"random #{seed}"] = random_complex(seed)
    return out


# -- maps --------------------------------------------------------------

def pi1() -> VertexMap:
    """The simplicial map of the path example: 1'->1, 2'->2, 3'->2."""
    return VertexMap(primed_path(), path(), {"1'": 1, "2'": 2, "3'": 2})


def pi2() -> VertexMap:
    """The non-simplicial map of the path example: 1'->1, 2'->3, 3'->3."""
    return VertexMap(primed_path(), path(), {"1'": 1, "2'": 3, "3'": 3})


def simplicial_maps() -> dict[str, VertexMap]:
    """At least ten simplicial maps, identities and composites included."""
    tri, hol, e, tet = full_triangle(), hollow_triangle(), edge(), tetrahedron_boundary()
    collapse = VertexMap(tri, e, {1: 1, 2: 2, 3: 2})
    include = VertexMap(hol, tri, {1: 1, 2: 2, 3: 3})
    rotate = VertexMap(hol, hol, {1: 2, 2: 3, 3: 1})
    reflect = VertexMap(tri, tri, {1: 2, 2: 1, 3: 3})
    squash = VertexMap(tet, tri, {1: 1, 2: 2, 3: 3, 4: 3})
    edge_in = VertexMap(e, tri, {1: 1, 2: 3})
    fold = VertexMap(primed_path(), primed_path(), {"1'": "1'", "2'": "2'", "3'": "1'"})
    return {
        "pi1": pi1(),
        "id edge": identity_map(e),
        "id full triangle": identity_map(tri),
        "id hollow triangle": identity_map(hol),
        "id path": identity_map(path()),
        "collapse triangle->edge": collapse,
        "include hollow->full": include,
        "rotate hollow": rotate,
        "reflect triangle": reflect,
        "squash tetrahedron boundary": squash,
        "edge into triangle": edge_in,
        "collapse . include": compose(include, collapse),
        "rotate . rotate": compose(rotate, rotate),
        "pi1 . fold": compose(fold, pi1()),
        "reflect . edge": compose(edge_in, reflect),
    }


def composable_pairs() -> dict[str, tuple[VertexMap, VertexMap]]:
    """Pairs ``(m2, m1)`` with ``m2.target == m1.source``."""
    m = simplicial_maps()
    fold = VertexMap(primed_path(), primed_path(), {"1'": "1'", "2'": "2'", "3'": "1'"})
    return {
        "include then collapse": (m["include hollow->full"], m["collapse triangle->edge"]),
        "rotate then rotate": (m["rotate hollow"], m["rotate hollow"]),
        "fold then pi1": (fold, m["pi1"]),
        "edge then reflect": (m["edge into triangle"], m["reflect triangle"]),
        "squash then reflect": (m["squash tetrahedron boundary"], m["reflect triangle"]),
    }
