"""Text and JSON forms of complexes, maps and algebra elements.

Complex files::

    # comments start with '#'
    vertices: 1 2 3 4
    facet: 1 2 3

Map files (source and target complexes are given separately)::

    map:
    1' -> 1

Element expressions::

    3/2 * [1 2 | 1 2 3] - [1 | 1 2]
    <1 ; 1 2 ; 1 2 3> + 2 * <2 ; 1 2>

Canonical printing orders terms by degree, then lexicographically by the
enumeration; unit coefficients are omitted and integers print without a
denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .algebra import IncidenceElement
from .combination import accumulate
from .complex import Complex, ComplexError, build_complex
from .stories import StoryElement, StoryError, _validate


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)
        self.line = line
        self.column = column


# -- formatting --------------------------------------------------------

def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_simplex(s) -> str:
    return " ".join(str(v) for v in s)


def format_pair(p, q) -> str:
    return f"[{format_simplex(p)} | {format_simplex(q)}]"


def format_story(w) -> str:
    return "<" + " ; ".join(format_simplex(s) for s in w) + ">"


def _term_key(c: Complex, x, key):
    if isinstance(x, IncidenceElement):
        p, q = key
        return (len(q) - len(p), c.key(p), c.key(q))
    return (len(key) - 1, tuple(c.key(s) for s in key))


def format_element(x: IncidenceElement | StoryElement) -> str:
    if not x:
        return "0"
    c = x.complex
    parts = []
    for key in sorted(x.keys(), key=lambda k: _term_key(c, x, k)):
        a = x.coeff(key)
        basis = format_pair(*key) if isinstance(x, IncidenceElement) else format_story(key)
        mag = abs(a)
        body = basis if mag == 1 else f"{format_rational(mag)} * {basis}"
        if not parts:
            parts.append(("-" if a < 0 else "") + body)
        else:
            parts.append(("- " if a < 0 else "+ ") + body)
    return " ".join(parts)


# -- complexes and maps ------------------------------------------------

def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_complex(text: str) -> Complex:
    vertices = None
    facets: list[tuple[int, list[str]]] = []
    for no, line in _lines(text):
        head, sep, rest = line.partition(":")
        head = head.strip()
        if not sep or head not in ("vertices", "facet"):
            raise ParseError(f"expected 'vertices:' or 'facet:', got {line!r}", no)
        toks = rest.split()
        if head == "vertices":
            if vertices is not None:
                raise ParseError("duplicate 'vertices:' line", no)
            if not toks:
                raise ParseError("a complex needs at least one vertex", no)
            _check_tokens(toks, no)
            vertices = (toks, no)
        else:
            if not toks:
                raise ParseError("empty facet", no)
            _check_tokens(toks, no)
            facets.append((no, toks))
    if vertices is None:
        raise ParseError("missing 'vertices:' line")
    toks, vno = vertices
    if len(set(toks)) != len(toks):
        raise ParseError("duplicate vertex in 'vertices:'", vno)
    known = set(toks)
    for no, f in facets:
        for v in f:
            if v not in known:
                raise ParseError(f"unknown vertex {v}", no)
        if len(set(f)) != len(f):
            raise ParseError("repeated vertex in facet", no)
    return build_complex(toks, [f for _, f in facets])


_BAD_TOKEN = re.compile(r"[;|\[\]<>(){}]")


def _check_tokens(toks: Iterable[str], no: int | None) -> None:
    for t in toks:
        if _BAD_TOKEN.search(t):
            raise ParseError(f"illegal vertex token {t!r}", no)


def format_complex(c: Complex) -> str:
    lines = ["vertices: " + format_simplex(c.vertex_order)]
    lines += ["facet: " + format_simplex(f) for f in c.facets() if len(f) > 1]
    return "\n".join(lines) + "\n"


def parse_map(text: str, source: Complex, target: Complex):
    """Parse a map file into a :class:`~incidence_dga.functor.VertexMap`."""
    from .functor import MapError, VertexMap

    src = {str(v): v for v in source.vertex_order}
    dst = {str(v): v for v in target.vertex_order}
    assignment = {}
    seen_header = False
    for no, line in _lines(text):
        if not seen_header:
            if line.replace(" ", "") != "map:":
                raise ParseError("map files start with 'map:'", no)
            seen_header = True
            continue
        a, sep, b = line.partition("->")
        a, b = a.strip(), b.strip()
        if not sep or not a or not b or len(a.split()) != 1 or len(b.split()) != 1:
            raise ParseError(f"expected 'source -> target', got {line!r}", no)
        if a not in src:
            raise ParseError(f"unknown source vertex {a}", no)
        if b not in dst:
            raise ParseError(f"unknown target vertex {b}", no)
        if src[a] in assignment:
            raise ParseError(f"vertex {a} mapped twice", no)
        assignment[src[a]] = dst[b]
    if not seen_header:
        raise ParseError("map files start with 'map:'")
    try:
        return VertexMap(source, target, assignment)
    except MapError as e:
        raise ParseError(str(e)) from None


def format_map(m) -> str:
    lines = ["map:"]
    lines += [f"{u} -> {m.assignment[u]}" for u in m.source.vertex_order]
    return "\n".join(lines) + "\n"


# -- element expressions -----------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*])|(?P<basis>\[[^\]]*\]|<[^>]*>)|(?P<bad>\S))")


def parse_element(text: str, c: Complex, kind: str | None = None) -> IncidenceElement | StoryElement:
    """Parse an element expression over ``c``.

    ``kind`` ("pair" or "story") only matters for the literal ``0``.
    """
    lookup = {str(v): v for v in c.vertex_order}
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group("bad"):
            raise ParseError(f"unexpected {m.group('bad')!r}", column=m.start("bad") + 1)
        kind_ = m.lastgroup
        tokens.append((kind_, m.group(kind_), m.start(kind_) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty expression")
    if len(tokens) == 1 and tokens[0][:2] == ("num", "0"):
        if kind == "story":
            return StoryElement(c)
        return IncidenceElement(c)

    terms: dict = {}
    flavour = None
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "op" and tokens[i][1] in "+-":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", column=tokens[i][2])
        first = False
        coef = Fraction(1)
        if i < len(tokens) and tokens[i][0] == "num":
            num = tokens[i][1]
            n, _, d = num.partition("/")
            if d and int(d) == 0:
                raise ParseError("zero denominator", column=tokens[i][2])
            coef = Fraction(int(n), int(d) if d else 1)
            i += 1
            if i >= len(tokens) or tokens[i][:2] != ("op", "*"):
                raise ParseError("expected '*' after coefficient",
                                 column=tokens[i][2] if i < len(tokens) else len(text) + 1)
            i += 1
        if i >= len(tokens) or tokens[i][0] != "basis":
            raise ParseError("expected a basis term '[P | Q]' or '<P0 ; ...>'",
                             column=tokens[i][2] if i < len(tokens) else len(text) + 1)
        body, col = tokens[i][1], tokens[i][2]
        i += 1
        if body[0] == "[":
            this = "pair"
            key = _parse_pair(body[1:-1], c, lookup, col)
        else:
            this = "story"
            key = _parse_story(body[1:-1], c, lookup, col)
        if flavour is None:
            flavour = this
        elif flavour != this:
            raise ParseError("cannot mix incidence pairs and stories", column=col)
        accumulate(terms, key, sign * coef)
    if flavour == "pair":
        return IncidenceElement(c, terms)
    return StoryElement(c, terms)


def _parse_simplex(body: str, c: Complex, lookup: dict, col: int):
    toks = body.split()
    if not toks:
        raise ParseError("empty simplex", column=col)
    verts = []
    for t in toks:
        if t not in lookup:
            raise ParseError(f"unknown vertex {t}", column=col)
        verts.append(lookup[t])
    try:
        return c.simplex(verts)
    except ComplexError as e:
        raise ParseError(str(e), column=col) from None


def _parse_pair(body: str, c: Complex, lookup: dict, col: int):
    left, sep, right = body.partition("|")
    if not sep or "|" in right:
        raise ParseError("a pair is written '[P | Q]'", column=col)
    p = _parse_simplex(left, c, lookup, col)
    q = _parse_simplex(right, c, lookup, col)
    if not set(p) <= set(q):
        raise ParseError(f"P = {{{format_simplex(p)}}} is not a subset of Q = {{{format_simplex(q)}}}",
                         column=col)
    return (p, q)


def _parse_story(body: str, c: Complex, lookup: dict, col: int):
    w = tuple(_parse_simplex(part, c, lookup, col) for part in body.split(";"))
    try:
        _validate(c, w)
    except StoryError as e:
        raise ParseError(str(e), column=col) from None
    return w


# -- JSON --------------------------------------------------------------

def _json_vertex(v):
    return v if isinstance(v, (int, str)) else str(v)


def element_to_json(x: IncidenceElement | StoryElement) -> list[dict]:
    c = x.complex
    out = []
    for key in sorted(x.keys(), key=lambda k: _term_key(c, x, k)):
        coeff = format_rational(x.coeff(key))
        if isinstance(x, IncidenceElement):
            p, q = key
            out.append({"p": [_json_vertex(v) for v in p], "q": [_json_vertex(v) for v in q], "coeff": coeff})
        else:
            out.append({"story": [[_json_vertex(v) for v in s] for s in key], "coeff": coeff})
    return out


def element_from_json(records: list[dict], c: Complex) -> IncidenceElement | StoryElement:
    lookup = {str(v): v for v in c.vertex_order}

    def simplex(vs):
        try:
            return c.simplex(lookup.get(str(v), v) for v in vs)
        except ComplexError as e:
            raise ParseError(str(e)) from None

    pairs: dict = {}
    stories: dict = {}
    for r in records:
        coeff = Fraction(r["coeff"])
        if "story" in r:
            w = tuple(simplex(s) for s in r["story"])
            accumulate(stories, w, coeff)
        else:
            accumulate(pairs, (simplex(r["p"]), simplex(r["q"])), coeff)
    if pairs and stories:
        raise ParseError("cannot mix incidence pairs and stories")
    try:
        if stories:
            return StoryElement(c, stories)
        return IncidenceElement(c, pairs)
    except (ComplexError, StoryError) as e:
        raise ParseError(str(e)) from None
