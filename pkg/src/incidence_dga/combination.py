"""Sparse rational linear combinations over a hashable basis."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Hashable, Iterator, Mapping


class Combination:
    """Immutable finite formal sum ``sum c_k * k`` with exact coefficients.

    Zero coefficients are never stored, so equality is plain dict equality.
    Subclasses bind the combination to a context (a complex, a dimension)
    through :meth:`_context` and :meth:`_new`.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, object] | None = None):
        clean: dict[Hashable, Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[k] = c
        self._terms = clean

    # subclasses override these two
    def _context(self):
        return None

    def _new(self, terms: dict) -> "Combination":
        return type(self)(terms)

    @classmethod
    def _from_clean(cls, proto: "Combination", terms: dict) -> "Combination":
        out = proto._new({})
        out._terms = terms
        return out

    def coeff(self, key: Hashable) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._context() == other._context() and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "Combination") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self._context() != other._context():
            raise ValueError("operands live over different complexes")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, Combination):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return self._from_clean(self, out)

    __radd__ = __add__

    def __neg__(self):
        return self._from_clean(self, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Combination):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "Combination":
        s = _as_fraction(s)
        if not s:
            return self._from_clean(self, {})
        return self._from_clean(self, {k: c * s for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)) or isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def accumulate(out: dict, key: Hashable, c) -> None:
    """In-place ``out[key] += c`` that drops entries reaching zero."""
    s = out.get(key, 0) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)
