"""Finite set systems and their incidence matrices.

A set system is a point set {1..v} together with an ordered collection of
blocks (subsets of the points).  Blocks may repeat.  The incidence matrix has
one row per block and one column per (t-1)-subset of points, and is the
mother-matrix skeleton from which quasi-cyclic parity-check matrices are
lifted.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

__all__ = [
    "SetSystemError",
    "SetSystem",
    "SystemStats",
    "BinaryMatrix",
    "validate_fss",
    "block_stats",
    "co_block",
    "incidence_matrix",
    "from_incidence",
]


class SetSystemError(ValueError):
    """Raised for malformed set-system input."""


@dataclass(frozen=True)
class SetSystem:
    """Points ``1..v`` plus an ordered collection of blocks.

    Blocks are stored as sorted tuples of 1-based points.  Block order is
    significant: shift sequences are aligned to it.  ``t`` is the balance
    parameter (pairs for t=2).
    """

    v: int
    blocks: tuple[tuple[int, ...], ...]
    t: int = 2

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def incidences(self) -> list[tuple[int, int]]:
        """All (point, block_index) pairs, block-major, points ascending.

        Block indices are 1-based to match block labels elsewhere.
        """
        return [(i, j + 1) for j, blk in enumerate(self.blocks) for i in blk]

    def point_blocks(self, x: int) -> list[int]:
        """1-based indices of the blocks containing point ``x``."""
        return [j + 1 for j, blk in enumerate(self.blocks) if x in blk]

    def to_json(self) -> str:
        return json.dumps(
            {"v": self.v, "t": self.t, "blocks": [list(b) for b in self.blocks]}
        )

    @classmethod
    def from_json(cls, text: str) -> "SetSystem":
        doc = json.loads(text)
        return validate_fss(doc["v"], doc["blocks"], doc.get("t", 2))


def validate_fss(v, blocks, t=2) -> SetSystem:
    """Check raw input and build a :class:`SetSystem`.

    Raises :class:`SetSystemError` on an out-of-range point, a duplicated
    point inside one block, an empty block, or ``t`` exceeding the maximum
    block size.  Block order is preserved; points inside a block are sorted.
    """
    if not isinstance(v, int) or v < 1:
        raise SetSystemError(f"point count must be a positive integer, got {v!r}")
    clean = []
    for j, raw in enumerate(blocks):
        pts = list(raw)
        if not pts:
            raise SetSystemError(f"block {j + 1} is empty")
        if len(set(pts)) != len(pts):
            raise SetSystemError(f"block {j + 1} repeats a point: {sorted(pts)}")
        for x in pts:
            if not isinstance(x, int) or not 1 <= x <= v:
                raise SetSystemError(f"block {j + 1}: point {x!r} outside 1..{v}")
        clean.append(tuple(sorted(pts)))
    if not isinstance(t, int) or t < 1:
        raise SetSystemError(f"t must be a positive integer, got {t!r}")
    if clean and t > max(len(b) for b in clean):
        raise SetSystemError(
            f"t={t} exceeds the maximum block size {max(len(b) for b in clean)}"
        )
    return SetSystem(v=v, blocks=tuple(clean), t=t)


@dataclass(frozen=True)
class SystemStats:
    """Block-size / replication / coverage statistics of a set system.

    ``coverage[i]`` is the set of distinct i-subset coverage counts and
    ``coverage_hist[i]`` the full count histogram, for 0 <= i <= t.
    """

    K: tuple[int, ...]
    R: tuple[int, ...]
    coverage: dict[int, frozenset[int]]
    coverage_hist: dict[int, dict[int, int]] = field(default_factory=dict)


def block_stats(fss: SetSystem) -> SystemStats:
    """Compute K, R and the i-subset coverage sets exhaustively.

    A zero joins ``coverage[i]`` whenever some i-subset of the full point set
    is contained in no block.
    """
    K = tuple(len(b) for b in fss.blocks)
    R = tuple(sum(1 for b in fss.blocks if x in b) for x in range(1, fss.v + 1))
    coverage: dict[int, frozenset[int]] = {}
    hist: dict[int, dict[int, int]] = {}
    for i in range(fss.t + 1):
        counts: Counter = Counter()
        for blk in fss.blocks:
            for sub in combinations(blk, i):
                counts[sub] += 1
        values = set(counts.values())
        n_possible = _binom(fss.v, i)
        if len(counts) < n_possible:
            values.add(0)
        coverage[i] = frozenset(values)
        hist[i] = dict(Counter(counts.values()))
        if len(counts) < n_possible:
            hist[i][0] = n_possible - len(counts)
    return SystemStats(K=K, R=R, coverage=coverage, coverage_hist=hist)


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def co_block(fss: SetSystem, points) -> bool:
    """True iff some block contains every given point."""
    pts = set(points)
    return any(pts <= set(blk) for blk in fss.blocks)


class BinaryMatrix:
    """Sparse 0/1 matrix with row- and column-adjacency views.

    ``row_support[i]`` and ``col_support[j]`` are sorted index lists; the two
    views are kept mutually consistent.  ``col_labels`` optionally records the
    point subset each column stands for.
    """

    def __init__(self, rows, cols, entries, col_labels=None):
        self.rows = rows
        self.cols = cols
        seen = set()
        self.row_support = [[] for _ in range(rows)]
        self.col_support = [[] for _ in range(cols)]
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry ({r},{c})")
            seen.add((r, c))
            self.row_support[r].append(c)
            self.col_support[c].append(r)
        for sup in self.row_support:
            sup.sort()
        for sup in self.col_support:
            sup.sort()
        self.col_labels = col_labels

    @property
    def nnz(self) -> int:
        return sum(len(s) for s in self.row_support)

    def entries(self):
        for r, sup in enumerate(self.row_support):
            for c in sup:
                yield (r, c)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.cols, self.rows, [(c, r) for r, c in self.entries()])

    def to_dense(self):
        import numpy as np

        H = np.zeros((self.rows, self.cols), dtype=np.int8)
        for r, c in self.entries():
            H[r, c] = 1
        return H

    def __eq__(self, other):
        return (
            isinstance(other, BinaryMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.row_support == other.row_support
        )

    def __repr__(self):
        return f"BinaryMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def incidence_matrix(fss: SetSystem, min_replication: int = 2) -> BinaryMatrix:
    """Block-by-subset incidence matrix.

    Rows follow block order; columns are the (t-1)-subsets of the point set
    in lexicographic order, restricted to subsets contained in at least
    ``min_replication`` blocks.  The default 2 keeps only subsets shared by
    two distinct blocks; ``min_replication=1`` keeps every covered subset.
    """
    if min_replication not in (1, 2):
        raise ValueError("min_replication must be 1 or 2")
    size = fss.t - 1
    block_sets = [set(b) for b in fss.blocks]
    labels = []
    for sub in combinations(range(1, fss.v + 1), size):
        cover = sum(1 for bs in block_sets if set(sub) <= bs)
        if cover >= min_replication:
            labels.append(sub)
    entries = []
    for i, bs in enumerate(block_sets):
        for j, sub in enumerate(labels):
            if set(sub) <= bs:
                entries.append((i, j))
    return BinaryMatrix(fss.b, len(labels), entries, col_labels=labels)


def from_incidence(H: BinaryMatrix) -> SetSystem:
    """Read a binary matrix back as a t=2 set system.

    Block ``i`` is the 1-based column support of row ``i``; the point count is
    the column count.  Inverse of ``incidence_matrix(fss, 1)`` up to column
    relabeling.
    """
    blocks = []
    for i, sup in enumerate(H.row_support):
        if not sup:
            raise SetSystemError(f"row {i} is empty; blocks must be nonempty")
        blocks.append([c + 1 for c in sup])
    return validate_fss(H.cols, blocks, 2)
