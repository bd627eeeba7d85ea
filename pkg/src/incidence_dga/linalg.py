"""Sparse Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping


def rank(columns: Iterable[Mapping[Hashable, object]]) -> int:
    """Exact rank of a matrix given as sparse columns (row key -> entry).

    Entries may be ints or Fractions.  Each column is reduced against the
    pivots found so far; a column that survives contributes a new pivot.
    """
    ids: dict[Hashable, int] = {}
    pivots: dict[int, dict[int, Fraction]] = {}
    for col in columns:
        v = {}
        for k, x in col.items():
            if x:
                v[ids.setdefault(k, len(ids))] = Fraction(x)
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                inv = 1 / v[lead]
                pivots[lead] = {k: x * inv for k, x in v.items()}
                break
            # every key of p is >= lead, so lead is eliminated for good
            f = v[lead]
            for k, x in p.items():
                y = v.get(k, 0) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return len(pivots)
