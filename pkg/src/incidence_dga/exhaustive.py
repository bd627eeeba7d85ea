"""Vectorised enumeration of whole story spaces.

Degree-``n`` story spaces have ``N (N-1)^n`` elements for a complex with
``N`` simplices, which rules out per-story Python objects for the
exhaustive checks in degree 3.  Stories are handled here as integer
arrays of simplex positions, one row per story, processed in blocks that
share the first statement.

Everything is integer arithmetic on signs, so results are exact.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .complex import Complex
from .linalg import rank


class StoryTables:
    """Step tables of a complex.

    ``step[a, b]`` is the sign of the vertex added going from simplex ``a``
    up to simplex ``b`` (0 when ``b`` is not ``a`` plus one vertex);
    ``two_step = step @ step`` sums over the intermediate simplex.
    """

    def __init__(self, c: Complex):
        self.complex = c
        n = len(c)
        self.size = n
        step = np.zeros((n, n), dtype=np.int64)
        for s in c:
            i = c.position(s)
            for up, sign in c.cofaces(s).items():
                step[i, c.position(up)] = sign
        self.step = step
        self.two_step = step @ step
        if len(c.vertex_order) > 63:
            raise ValueError("vertex bitmasks need at most 63 vertices")
        vidx = {v: i for i, v in enumerate(c.vertex_order)}
        self.mask = np.array([sum(1 << vidx[v] for v in s) for s in c.simplices], dtype=np.int64)
        self.card = np.array([len(s) for s in c.simplices], dtype=np.int64)

    # -- enumeration ---------------------------------------------------

    def blocks(self, degree: int) -> Iterator[np.ndarray]:
        """All ``degree``-stories as ``(m, degree + 1)`` arrays, one block per first statement."""
        n = self.size
        if degree > 0 and n < 2:
            return
        cols = np.arange(n)
        for first in range(n):
            rows = np.array([[first]], dtype=np.int64)
            for _ in range(degree):
                m = rows.shape[0]
                cand = np.broadcast_to(cols, (m, n))
                keep = cand != rows[:, -1:]
                nxt = cand[keep].reshape(m, n - 1)
                rows = np.concatenate([np.repeat(rows, n - 1, axis=0), nxt.reshape(-1, 1)], axis=1)
            yield rows

    def to_story(self, row) -> tuple:
        return tuple(self.complex.simplices[i] for i in row)

    # -- per-row quantities ----------------------------------------------

    def step_factors(self, rows: np.ndarray) -> np.ndarray:
        return self.step[rows[:, :-1], rows[:, 1:]]

    def signs(self, rows: np.ndarray) -> np.ndarray:
        """``eps_w`` for fair rows, 0 for unfair ones (the coefficient of ``sigma``)."""
        return np.prod(self.step_factors(rows), axis=1)

    def fair(self, rows: np.ndarray) -> np.ndarray:
        """Fairness from vertex bitmasks, independent of the sign table."""
        a, b = rows[:, :-1], rows[:, 1:]
        ma, mb = self.mask[a], self.mask[b]
        up = ((ma & ~mb) == 0) & (self.card[b] == self.card[a] + 1)
        return np.all(up, axis=1)

    def sigma_dbar_is_zero(self, rows: np.ndarray) -> np.ndarray:
        """Rows ``w`` with ``sigma(d w) == 0``.

        ``sigma(d w)`` splits into three parts with pairwise distinct
        targets: prepending (target ``(Q, Pn)``), appending (``(P0, Q)``)
        and inserting (``(P0, Pn)``).  The first two vanish unless ``w`` is
        fair; an insertion between ``P(k-1)`` and ``Pk`` contributes
        ``(-1)^k * two_step[P(k-1), Pk]`` times the other step factors.
        """
        f = self.step_factors(rows)
        m, n = f.shape
        total = np.prod(f, axis=1)
        head_has_faces = np.any(self.step[:, rows[:, 0]] != 0, axis=0)
        tail_has_cofaces = np.any(self.step[rows[:, -1], :] != 0, axis=1)
        ends_zero = (total == 0) | (~head_has_faces & ~tail_has_cofaces)
        if n == 0:
            return ends_zero
        prefix = np.ones((m, n + 1), dtype=np.int64)
        suffix = np.ones((m, n + 1), dtype=np.int64)
        for i in range(n):
            prefix[:, i + 1] = prefix[:, i] * f[:, i]
            suffix[:, n - 1 - i] = suffix[:, n - i] * f[:, n - 1 - i]
        middle = np.zeros(m, dtype=np.int64)
        for k in range(1, n + 1):
            others = prefix[:, k - 1] * suffix[:, k]
            ins = self.two_step[rows[:, k - 1], rows[:, k]]
            middle += (-1) ** k * others * ins
        return ends_zero & (middle == 0)

    def sigma_dbar(self, row) -> dict:
        """Scalar version of :meth:`sigma_dbar_is_zero`: the element
        ``sigma(d w)`` as ``{(pos P, pos Q): coeff}``."""
        row = list(row)
        n = len(row) - 1
        f = [int(self.step[a, b]) for a, b in zip(row, row[1:])]
        total = int(np.prod(f)) if f else 1
        out: dict = {}

        def add(key, val):
            if val:
                s = out.get(key, 0) + val
                if s:
                    out[key] = s
                else:
                    out.pop(key)

        if total:
            for q in range(self.size):
                add((q, row[-1]), int(self.step[q, row[0]]) * total)
                add((row[0], q), (-1) ** (n + 1) * total * int(self.step[row[-1], q]))
        for k in range(1, n + 1):
            others = int(np.prod(f[:k - 1] + f[k:])) if n > 1 else 1
            add((row[0], row[-1]), (-1) ** k * others * int(self.two_step[row[k - 1], row[k]]))
        return out

    # -- whole-space checks --------------------------------------------

    def check_unfair_differential(self, degree: int) -> tuple[int, list[tuple]]:
        """Number of unfair ``degree``-stories and those whose differential
        leaves the ideal."""
        count = 0
        bad: list[tuple] = []
        for rows in self.blocks(degree):
            unfair = ~self.fair(rows)
            count += int(unfair.sum())
            viol = unfair & ~self.sigma_dbar_is_zero(rows)
            for r in rows[viol]:
                bad.append(self.to_story(r))
        return count, bad

    def sigma_image(self, degree: int) -> "SigmaImage":
        """Summary of ``sigma`` on the whole degree-``degree`` story space."""
        img = SigmaImage(degree)
        columns = []
        for rows in self.blocks(degree):
            signs = self.signs(rows)
            fair = self.fair(rows)
            img.stories += rows.shape[0]
            img.fair += int(fair.sum())
            img.sign_mismatch += int(np.sum(fair != (signs != 0)))
            for r, e in zip(rows[fair], signs[fair]):
                columns.append({(int(r[0]), int(r[-1])): int(e)})
        c = self.complex
        img.targets = {(c.simplices[p], c.simplices[q]) for col in columns for p, q in col}
        img.rank = rank(columns)
        return img


class SigmaImage:
    __slots__ = ("degree", "stories", "fair", "sign_mismatch", "targets", "rank")

    def __init__(self, degree: int):
        self.degree = degree
        self.stories = 0
        self.fair = 0
        self.sign_mismatch = 0
        self.targets: set = set()
        self.rank = 0
