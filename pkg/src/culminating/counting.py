"""Exact and scaled dynamic programming counts, plus a brute-force oracle.

All tables count *extensions*: ``table[i][j]`` is the number of ways to
append ``i`` more letters to a prefix currently at height ``j``.  Since the
recurrences do not depend on the target length, ``table[i][0]`` (or
``table[i][0][0]``) is the count for length ``i``, so one table built to
depth ``n`` yields the whole sequence up to ``n``.

Heights are capped at ``a * (n - i)``, the largest height a prefix of length
``n - i`` can reach.  ``capped=False`` widens every row by ``a * n`` extra
heights; it exists so the cap can be checked against a looser domain.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import DOWN, UP, StepSystem, Word

BRUTE_FORCE_CAP = 20


# ---------------------------------------------------------------- positive


@dataclass(frozen=True)
class PositiveTable:
    """``rows[i][j]``: positive extensions of length ``i`` from height ``j``."""

    sys: StepSystem
    n: int
    rows: list[list[int]] = field(repr=False)

    def __getitem__(self, i: int) -> list[int]:
        return self.rows[i]

    def get(self, i: int, j: int) -> int:
        return self.rows[i][j]

    @property
    def total(self) -> int:
        return self.rows[self.n][0]


def positive_table(sys: StepSystem, n: int, capped: bool = True) -> PositiveTable:
    if n < 0:
        raise ValueError("n must be >= 0")
    a, b = sys.a, sys.b
    slack = 0 if capped else a * n
    rows = [[1] * (a * n + slack + 1)]
    for i in range(1, n + 1):
        prev = rows[-1]
        width = a * (n - i) + slack + 1
        row = [0] * width
        for j in range(width):
            v = prev[j + a]
            if j > b:
                v += prev[j - b]
            row[j] = v
        rows.append(row)
    return PositiveTable(sys, n, rows)


def positive_counts(sys: StepSystem, nmax: int) -> list[int]:
    """``[p_0, ..., p_nmax]``."""
    t = positive_table(sys, nmax)
    return [t.rows[i][0] for i in range(nmax + 1)]


def count_positive(sys: StepSystem, n: int) -> int:
    return positive_table(sys, n).total


# ------------------------------------------------------------- culminating


@dataclass(frozen=True)
class CulminatingTable:
    """Extensions ``c[i][j][h]`` of a positive prefix at height ``j`` with
    running maximum ``h`` into a culminating word.

    Stored by gap ``g = h - j``: ``rows[i][j][g]``.  Entries with
    ``g >= a * i`` are zero (the walk cannot climb past ``h`` in time) and
    are not stored.
    """

    sys: StepSystem
    n: int
    rows: list[list[list[int]]] = field(repr=False)

    def get(self, i: int, j: int, h: int) -> int:
        if h < j:
            raise ValueError(f"running maximum {h} below current height {j}")
        g = h - j
        if g >= self.sys.a * i:
            return 0
        return self.rows[i][j][g]

    @property
    def total(self) -> int:
        return self.rows[self.n][0][0] if self.n >= 1 else 0


def culminating_table(sys: StepSystem, n: int, capped: bool = True) -> CulminatingTable:
    if n < 0:
        raise ValueError("n must be >= 0")
    a, b = sys.a, sys.b
    slack = 0 if capped else a * n
    rows: list[list[list[int]]] = [[]]  # i = 0 unused
    if n == 0:
        return CulminatingTable(sys, n, rows)

    def hmax(i):
        return a * (n - i) + slack

    # c[1][j][h] = 1 iff j + a > h, i.e. g < a
    top = hmax(1)
    rows.append([[1] * min(a, top - j + 1) for j in range(top + 1)])
    for i in range(2, n + 1):
        prev = rows[-1]
        gcap = a * (i - 1)  # zero beyond this gap in row i - 1
        top = hmax(i)
        row = []
        for j in range(top + 1):
            up_row = prev[j + a]
            down_row = prev[j - b] if j > b else None
            cells = []
            for g in range(min(a * i, top - j + 1)):
                gu = g - a if g > a else 0
                v = up_row[gu] if gu < gcap else 0
                if down_row is not None and g + b < gcap:
                    v += down_row[g + b]
                cells.append(v)
            row.append(cells)
        rows.append(row)
    return CulminatingTable(sys, n, rows)


def culminating_counts(sys: StepSystem, nmax: int) -> list[int]:
    """``[c_0, ..., c_nmax]`` with ``c_0 = 0``."""
    t = culminating_table(sys, nmax)
    return [0] + [t.rows[i][0][0] for i in range(1, nmax + 1)]


def count_culminating(sys: StepSystem, n: int) -> int:
    return culminating_table(sys, n).total


# ------------------------------------------------------------ fixed height


@dataclass(frozen=True)
class FixedHeightTable:
    """``rows[i][j]`` for ``0 <= j < k``: extensions from height ``j`` that
    stay strictly between 0 and ``k`` and end exactly at ``k``."""

    sys: StepSystem
    n: int
    k: int
    rows: list[list[int]] = field(repr=False)

    def get(self, i: int, j: int) -> int:
        return self.rows[i][j] if 0 <= j < self.k else 0

    @property
    def total(self) -> int:
        return self.rows[self.n][0] if self.n >= 1 else 0


def fixed_height_table(sys: StepSystem, n: int, k: int) -> FixedHeightTable:
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    a, b = sys.a, sys.b
    rows: list[list[int]] = [[0] * k]
    if n >= 1:
        rows.append([1 if j + a == k else 0 for j in range(k)])
    for _ in range(2, n + 1):
        prev = rows[-1]
        row = [0] * k
        for j in range(k):
            v = prev[j + a] if j + a < k else 0
            if j > b:
                v += prev[j - b]
            row[j] = v
        rows.append(row)
    return FixedHeightTable(sys, n, k, rows)


def culminating_height_counts(sys: StepSystem, nmax: int, k: int) -> list[int]:
    t = fixed_height_table(sys, nmax, k)
    return [0] + [t.rows[i][0] for i in range(1, nmax + 1)]


def count_culminating_height(sys: StepSystem, n: int, k: int) -> int:
    return fixed_height_table(sys, n, k).total


# --------------------------------------------- excursions, quasi-excursions


def _forward_heights(sys: StepSystem, nmax: int, floor: int) -> list[dict[int, int]]:
    """Walk counts by final height; every step must end at height >= floor."""
    a, b = sys.a, sys.b
    out = [{0: 1}]
    for _ in range(nmax):
        nxt: dict[int, int] = {}
        for h, c in out[-1].items():
            nxt[h + a] = nxt.get(h + a, 0) + c
            if h - b >= floor:
                nxt[h - b] = nxt.get(h - b, 0) + c
        out.append(nxt)
    return out


def excursion_counts(sys: StepSystem, nmax: int) -> list[int]:
    return [d.get(0, 0) for d in _forward_heights(sys, nmax, 0)]


def count_excursions(sys: StepSystem, n: int) -> int:
    return excursion_counts(sys, n)[n]


def quasi_excursion_counts(sys: StepSystem, nmax: int) -> list[int]:
    """A quasi-excursion is a non-empty positive walk ending in ``1..b``
    followed by one down step."""
    by_height = _forward_heights(sys, max(nmax - 1, 0), 1)
    out = [0] * (nmax + 1)
    for n in range(2, nmax + 1):
        d = by_height[n - 1]
        out[n] = sum(d.get(j, 0) for j in range(1, sys.b + 1))
    return out


def count_quasi_excursions(sys: StepSystem, n: int) -> int:
    return quasi_excursion_counts(sys, n)[n]


# ------------------------------------------------------------------ oracle


def all_words(n: int):
    for letters in itertools.product((UP, DOWN), repeat=n):
        yield "".join(letters)


def brute_force_count(
    sys: StepSystem,
    n: int,
    predicate: Callable[[StepSystem, str], bool],
    cap: int = BRUTE_FORCE_CAP,
) -> int:
    """Count words of length ``n`` satisfying ``predicate(sys, word)``."""
    if n > cap:
        raise ValueError(f"brute force refused: n={n} exceeds cap {cap}")
    return sum(1 for w in all_words(n) if predicate(sys, w))


def brute_force_words(sys, n, predicate, cap: int = BRUTE_FORCE_CAP) -> list[Word]:
    if n > cap:
        raise ValueError(f"brute force refused: n={n} exceeds cap {cap}")
    return [Word(w) for w in all_words(n) if predicate(sys, w)]


@dataclass
class Census:
    """Counts of every word class at one length, from full enumeration."""

    n: int
    positive: int
    culminating: int
    excursion: int
    quasi_excursion: int
    culminating_by_height: dict[int, int]


def brute_force_census(sys: StepSystem, n: int, cap: int = BRUTE_FORCE_CAP) -> Census:
    """Enumerate all ``2**n`` words at once with numpy and classify them."""
    if n > cap:
        raise ValueError(f"brute force refused: n={n} exceeds cap {cap}")
    if n == 0:
        return Census(0, 1, 0, 1, 0, {})
    codes = np.arange(2**n, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n, dtype=np.int64)) & 1  # 1 = up
    steps = np.where(bits == 1, sys.a, -sys.b).astype(np.int64)
    hs = np.cumsum(steps, axis=1)  # heights after each step
    final = hs[:, -1]
    positive = (hs > 0).all(axis=1)
    before = np.maximum(np.max(hs[:, :-1], axis=1, initial=0), 0) if n > 1 else np.zeros(len(codes), np.int64)
    culm = positive & (final > before)
    exc = (hs >= 0).all(axis=1) & (final == 0)
    if n >= 2:
        quasi = (hs[:, :-1] > 0).all(axis=1) & (final <= 0)
    else:
        quasi = np.zeros(len(codes), bool)
    heights, counts = np.unique(final[culm], return_counts=True)
    return Census(
        n,
        int(positive.sum()),
        int(culm.sum()),
        int(exc.sum()),
        int(quasi.sum()),
        {int(h): int(c) for h, c in zip(heights, counts)},
    )


# ------------------------------------------------------------- float DP


def positive_profile(sys: StepSystem, n: int) -> np.ndarray:
    """``p_i / 2**i`` for ``i = 0..n`` in double precision."""
    a, b = sys.a, sys.b
    pos = np.empty(n + 1)
    pos[0] = 1.0
    q = np.ones(a * n + a + 1)
    for i in range(1, n + 1):
        width = a * (n - i) + 1
        nq = np.zeros_like(q)
        nq[:width] = q[a:width + a]
        if width > b + 1:
            nq[b + 1:width] += q[1:width - b]
        nq[:width] *= 0.5
        q = nq
        pos[i] = q[0]
    return pos


def culminating_profile(sys: StepSystem, n: int) -> np.ndarray:
    """``c_i / 2**i`` for ``i = 0..n`` in double precision.

    The culminating recurrence in gap coordinates with every row halved, so
    values stay in ``[0, 1]``.  Uses two ``(a*n) x (a*n)`` buffers; cells
    outside the reachable domain may hold stale values but are never read
    by reachable states.  No rounding bound is certified.
    """
    a, b = sys.a, sys.b
    culm = np.zeros(n + 1)
    if n == 0:
        return culm
    rows, cols = a * n + a + 1, a * n + b + 1
    prev = np.zeros((rows, cols))
    cur = np.zeros((rows, cols))
    top = a * (n - 1)
    prev[: top + 1, : min(a, top + 1)] = 0.5
    culm[1] = prev[0, 0]
    for i in range(2, n + 1):
        top = a * (n - i)
        J = top + 1
        G = min(a * i, J)
        blk = cur[:J, :G]
        # up step: gap shrinks by a, floored at 0
        if G > a:
            blk[:, a:] = prev[a:J + a, : G - a]
        blk[:, : min(a, G)] = prev[a:J + a, 0:1]
        # down step: allowed from j > b, gap grows by b
        if J > b + 1:
            blk[b + 1:, :] += prev[1:J - b, b:G + b]
        blk *= 0.5
        culm[i] = cur[0, 0]
        prev, cur = cur, prev
    return culm


def float_profiles(sys: StepSystem, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(c_i / 2**i, p_i / 2**i)`` for ``i = 0..n``."""
    return culminating_profile(sys, n), positive_profile(sys, n)
