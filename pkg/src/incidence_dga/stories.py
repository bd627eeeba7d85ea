"""The universal differential envelope of the function algebra, in the
basis of stories, and its projection onto the incidence algebra.

A story of degree ``n`` is a sequence ``<P0, ..., Pn>`` of simplices with
no two equal neighbours.  A story is *fair* when every step adds exactly
one vertex; fair stories carry the sign ``eps_w``, the product of the
incidence coefficients of the added vertices.  The projection ``sigma``
sends a fair story to ``eps_w |P0><Pn|`` and everything else to zero; its
kernel is the simplicial differential ideal (unfair stories plus the
sign-corrected differences of fair stories with common endpoints).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

from .algebra import IncidenceElement
from .combination import Combination, accumulate
from .complex import Complex, ComplexError, Simplex

Story = tuple  # tuple of simplices


class StoryError(ValueError):
    pass


class StoryElement(Combination):
    __slots__ = ("complex",)

    def __init__(self, complex: Complex, terms=None):
        super().__init__(terms)
        self.complex = complex
        for w in self._terms:
            _validate(complex, w)

    def _new(self, terms):
        return StoryElement(self.complex, terms)

    def _context(self):
        return self.complex

    @classmethod
    def _from_clean(cls, proto, terms):
        return cls._raw(proto.complex, terms)

    @classmethod
    def _raw(cls, complex: Complex, terms: dict) -> "StoryElement":
        # trusted constructor: terms already validated and zero-free
        out = object.__new__(cls)
        out._terms = terms
        out.complex = complex
        return out

    def __mul__(self, other):
        if isinstance(other, StoryElement):
            return story_multiply(self, other)
        return super().__mul__(other)

    def degrees(self) -> set[int]:
        return {len(w) - 1 for w in self._terms}

    def __repr__(self) -> str:
        from .textio import format_element
        return f"StoryElement({format_element(self)})"


def _validate(c: Complex, w: Story) -> None:
    if not w:
        raise StoryError("a story has at least one statement")
    for s in w:
        if s not in c:
            raise StoryError(f"{list(s)} is not a simplex of the complex")
    for a, b in zip(w, w[1:]):
        if a == b:
            raise StoryError(f"repeated neighbour {list(a)} in story")


def make_story(c: Complex, *statements: Iterable) -> Story:
    """Validated story from vertex lists, e.g. ``make_story(c, [1], [1, 2])``."""
    try:
        w = tuple(c.simplex(s) for s in statements)
    except ComplexError as e:
        raise StoryError(str(e)) from None
    _validate(c, w)
    return w


def story_element(c: Complex, *statements: Iterable, coeff=1) -> StoryElement:
    return StoryElement(c, {make_story(c, *statements): coeff})


# -- fairness and signs ------------------------------------------------

def is_fair(c: Complex, w: Story) -> bool:
    """True iff every step adds exactly one vertex (0-stories are fair)."""
    return all(c.step_sign(a, b) for a, b in zip(w, w[1:]))


def story_sign(c: Complex, w: Story) -> int:
    """``eps_w``: product over the steps of the sign of the added vertex."""
    sign = 1
    for a, b in zip(w, w[1:]):
        s = c.step_sign(a, b)
        if not s:
            raise StoryError("story_sign is only defined for fair stories")
        sign *= s
    return sign


def _sign_or_zero(c: Complex, w: Story) -> int:
    sign = 1
    for a, b in zip(w, w[1:]):
        s = c.step_sign(a, b)
        if not s:
            return 0
        sign *= s
    return sign


# -- algebra structure -------------------------------------------------

def story_multiply(x: StoryElement, y: StoryElement) -> StoryElement:
    """Concatenate at a matching junction, dropping the repeated statement."""
    if x.complex != y.complex:
        raise ValueError("operands live over different complexes")
    by_first: dict[Simplex, list] = {}
    for w, b in y.items():
        by_first.setdefault(w[0], []).append((w, b))
    out: dict = {}
    for v, a in x.items():
        for w, b in by_first.get(v[-1], ()):
            accumulate(out, v + w[1:], a * b)
    return StoryElement._from_clean(x, out)


def _degree(x: StoryElement) -> int | None:
    degs = x.degrees()
    if len(degs) > 1:
        raise StoryError(f"mixed-degree story element (degrees {sorted(degs)})")
    return degs.pop() if degs else None


def kahler_d(x: StoryElement) -> StoryElement:
    """The universal differential on a homogeneous story element.

    Prepend any ``Q != P0``; insert ``Q`` between ``P(k-1) != Q != Pk`` with
    sign ``(-1)^k``; append ``Q != Pn`` with sign ``(-1)^(n+1)``.
    """
    n = _degree(x)
    if n is None:
        return x
    simplices = x.complex.simplices
    # integer arithmetic over a common denominator; Fractions only at the end
    den = math.lcm(*(a.denominator for a in x._terms.values()))
    out: dict = {}
    get = out.get
    for w, a in x.items():
        a = a.numerator * (den // a.denominator)
        head, tail = w[0], w[-1]
        for q in simplices:
            if q != head:
                key = (q,) + w
                out[key] = get(key, 0) + a
        for k in range(1, n + 1):
            s = -a if k % 2 else a
            left, right = w[:k], w[k:]
            lo, hi = left[-1], right[0]
            for q in simplices:
                if q != lo and q != hi:
                    key = left + (q,) + right
                    out[key] = get(key, 0) + s
        s = a if n % 2 else -a
        for q in simplices:
            if q != tail:
                key = w + (q,)
                out[key] = get(key, 0) + s
    return StoryElement._raw(x.complex, {k: Fraction(v, den) for k, v in out.items() if v})


# -- projection and section --------------------------------------------

def sigma(x: StoryElement) -> IncidenceElement:
    """``w -> eps_w |P0><Pn|`` for fair ``w``; unfair stories map to zero."""
    c = x.complex
    out: dict = {}
    for w, a in x.items():
        e = _sign_or_zero(c, w)
        if e:
            accumulate(out, (w[0], w[-1]), e * a)
    return IncidenceElement._raw(c, out)


def fair_story(c: Complex, p: Simplex, q: Simplex, order: Sequence | None = None) -> Story:
    """The fair story from ``p`` up to ``q`` adding the missing vertices in
    ``order`` (default: enumeration order)."""
    missing = [v for v in q if v not in p]
    if order is not None:
        order = list(order)
        if len(order) != len(missing) or set(order) != set(missing):
            raise StoryError("order must be a permutation of the missing vertices")
        missing = order
    w = [p]
    cur = list(p)
    for v in missing:
        cur.append(v)
        w.append(c.simplex(cur))
    return tuple(w)


def fair_stories(c: Complex, p: Simplex, q: Simplex) -> list[Story]:
    """Every fair story from ``p`` to ``q``, one per vertex-addition order."""
    missing = [v for v in q if v not in p]
    return [fair_story(c, p, q, order) for order in permutations(missing)]


def lift(x: IncidenceElement, rng: random.Random | None = None) -> StoryElement:
    """A section of ``sigma``: each pair becomes ``eps_w w`` for a fair story ``w``.

    Without ``rng`` the missing vertices are added in enumeration order;
    with ``rng`` the order is shuffled per pair.
    """
    c = x.complex
    out: dict = {}
    for (p, q), a in x.items():
        order = None
        if rng is not None:
            order = [v for v in q if v not in p]
            rng.shuffle(order)
        w = fair_story(c, p, q, order)
        accumulate(out, w, story_sign(c, w) * a)
    return StoryElement._raw(c, out)


def in_ideal(x: StoryElement) -> bool:
    return sigma(x).is_zero()


# -- the ideal ---------------------------------------------------------

def iter_stories(c: Complex, n: int) -> Iterator[Story]:
    """All stories of degree ``n``, lexicographic in simplex position."""
    simplices = c.simplices
    if n == 0:
        for s in simplices:
            yield (s,)
        return
    for w in product(simplices, repeat=n + 1):
        if all(a != b for a, b in zip(w, w[1:])):
            yield w


def iter_unfair_stories(c: Complex, n: int) -> Iterator[Story]:
    return (w for w in iter_stories(c, n) if not is_fair(c, w))


def iter_symmetric_generators(c: Complex, n: int) -> Iterator[StoryElement]:
    """``eps_w w - eps_w' w'`` over unordered pairs of fair stories with
    common endpoints (a spanning set, not a basis)."""
    for q in c:
        if len(q) <= n:
            continue
        for p in combinations(q, len(q) - n):
            fair = fair_stories(c, p, q)
            signed = [(w, story_sign(c, w)) for w in fair]
            for (w, e), (w2, e2) in combinations(signed, 2):
                yield StoryElement._raw(c, {w: Fraction(e), w2: Fraction(-e2)})


def iter_ideal_generators(c: Complex, n: int) -> Iterator[StoryElement]:
    if n < 1:
        raise StoryError("the simplicial ideal starts in degree 1")
    one = Fraction(1)
    for w in iter_unfair_stories(c, n):
        yield StoryElement._raw(c, {w: one})
    yield from iter_symmetric_generators(c, n)


def ideal_generators(c: Complex, n: int) -> list[StoryElement]:
    """Unfair ``n``-stories followed by the fair-story differences."""
    return list(iter_ideal_generators(c, n))


# -- random elements ---------------------------------------------------

def random_story(c: Complex, n: int, rng: random.Random, *, first: Simplex | None = None,
                 last: Simplex | None = None, fair_bias: float = 0.6) -> Story:
    """Random ``n``-story; steps go up one vertex with probability ``fair_bias``
    when possible.  ``last`` builds the walk backwards from the end."""
    if first is not None and last is not None:
        raise ValueError("fix at most one endpoint")
    backwards = last is not None
    start = last if backwards else first
    cur = start if start is not None else rng.choice(c.simplices)
    w = [cur]
    for _ in range(n):
        if backwards:
            moves = [f for _, f in c.faces(cur)]
        else:
            moves = list(c.cofaces(cur))
        if moves and rng.random() < fair_bias:
            cur = rng.choice(moves)
        else:
            if len(c) < 2:
                raise StoryError("complex too small for stories of positive degree")
            nxt = cur
            while nxt == cur:
                nxt = rng.choice(c.simplices)
            cur = nxt
        w.append(cur)
    if backwards:
        w.reverse()
    return tuple(w)


def random_element(c: Complex, n: int, rng: random.Random, terms: int = 3, **kw) -> StoryElement:
    """Nonzero random combination of up to ``terms`` random ``n``-stories."""
    out: dict = {}
    while not out:
        for _ in range(terms):
            accumulate(out, random_story(c, n, rng, **kw), _random_coeff(rng))
    return StoryElement._raw(c, out)


def _random_coeff(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 1, 2, 5])
    return Fraction(num, rng.choice([1, 1, 2, 3]))


# -- the differential-ideal check --------------------------------------

@dataclass
class IdealReport:
    """Outcome of :func:`verify_differential_ideal`."""

    max_degree: int
    unfair_checked: dict[int, int] = field(default_factory=dict)
    symmetric_checked: dict[int, int] = field(default_factory=dict)
    products_checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_differential_ideal(c: Complex, max_degree: int, *, seed: int = 0,
                              samples: int = 100) -> IdealReport:
    """Check that the ideal is closed under the differential and under
    multiplication from either side.

    Closure under the differential is checked for every generator of
    degree ``1..max_degree``; the unfair generators go through the
    vectorised ``sigma . d`` of :mod:`incidence_dga.exhaustive`, the
    symmetric ones through :func:`kahler_d` and :func:`sigma` directly.
    Products are checked on ``samples`` random pairs per degree.
    """
    from .exhaustive import StoryTables
    from .textio import format_story

    if max_degree < 1:
        raise StoryError("max_degree must be at least 1")
    report = IdealReport(max_degree)
    rng = random.Random(seed)
    tables = StoryTables(c)
    for k in range(1, max_degree + 1):
        count, bad = tables.check_unfair_differential(k)
        report.unfair_checked[k] = count
        for w in bad[:5]:
            report.violations.append(f"d of unfair story {format_story(w)} leaves the ideal")
        if len(bad) > 5:
            report.violations.append(f"... {len(bad) - 5} more unfair violations in degree {k}")

        sym = list(iter_symmetric_generators(c, k))
        report.symmetric_checked[k] = len(sym)
        for g in sym:
            if not in_ideal(kahler_d(g)):
                report.violations.append(f"d of symmetric generator {g!r} leaves the ideal")

        if len(c) < 2:
            continue
        for _ in range(samples):
            if sym and rng.random() < 0.5:
                g = rng.choice(sym)
            else:
                w = random_story(c, k, rng, fair_bias=0.8)
                if is_fair(c, w):
                    continue
                g = StoryElement._raw(c, {w: Fraction(1)})
            m = rng.randint(0, 2)
            head = next(iter(g))[0]
            tail = next(iter(g))[-1]
            left = random_element(c, m, rng, last=head if rng.random() < 0.75 else None)
            right = random_element(c, m, rng, first=tail if rng.random() < 0.75 else None)
            report.products_checked += 2
            if not in_ideal(story_multiply(left, g)):
                report.violations.append(f"left product with {g!r} leaves the ideal")
            if not in_ideal(story_multiply(g, right)):
                report.violations.append(f"right product with {g!r} leaves the ideal")
    return report
