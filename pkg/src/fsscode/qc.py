"""Circulant lifting of a set system into a quasi-cyclic parity-check matrix.

A shift sequence assigns an element of Z_m to every (point in block)
incidence.  The proto matrix holds those shifts in a v x b grid, and
``expand`` replaces each cell by an m x m circulant permutation (or zero)
block.  Also contains matrix rate helpers and alist / JSON I/O.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .setsystem import BinaryMatrix, SetSystem

__all__ = [
    "EMPTY",
    "ShiftSequence",
    "QCProtoMatrix",
    "circulant",
    "assemble",
    "normalize_shifts",
    "expand",
    "rate_bound",
    "exact_rate",
    "gf2_rank",
    "write_alist",
    "read_alist",
    "shifts_to_json",
    "shifts_from_json",
    "shift_sequence_from_list",
]

EMPTY = None


@dataclass(frozen=True)
class ShiftSequence:
    """Map from incidence (point i, 1-based block j) to a shift in Z_m."""

    m: int
    entries: dict[tuple[int, int], int]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be positive, got {self.m}")
        for (i, j), s in self.entries.items():
            if not 0 <= s < self.m:
                raise ValueError(f"shift s[{i},{j}]={s} outside 0..{self.m - 1}")


class QCProtoMatrix:
    """v x b grid over {EMPTY} union Z_m; cell (i,j) is the shift of point i
    in block j when i belongs to block j."""

    def __init__(self, v, b, m, cells):
        self.v = v
        self.b = b
        self.m = m
        self.cells = cells  # dict (i, j) -> shift, 1-based indices

    def cell(self, i, j):
        return self.cells.get((i, j), EMPTY)

    def column_cells(self, j):
        """Sorted (point, shift) pairs of block-column j."""
        return sorted((i, s) for (i, jj), s in self.cells.items() if jj == j)

    def __eq__(self, other):
        return (
            isinstance(other, QCProtoMatrix)
            and (self.v, self.b, self.m) == (other.v, other.b, other.m)
            and self.cells == other.cells
        )

    def __repr__(self):
        return f"QCProtoMatrix(v={self.v}, b={self.b}, m={self.m})"


def circulant(m: int, s: int) -> BinaryMatrix:
    """m x m permutation matrix with entry (i, j) = 1 iff j = i + s (mod m)."""
    if not 0 <= s <= m - 1:
        raise ValueError(f"shift {s} outside 0..{m - 1}")
    return BinaryMatrix(m, m, [(i, (i + s) % m) for i in range(m)])


def assemble(fss: SetSystem, S: ShiftSequence) -> QCProtoMatrix:
    """Place the shifts of ``S`` on the incidence pattern of ``fss``.

    ``S`` must cover exactly the incidences of the system.
    """
    wanted = set(fss.incidences)
    got = set(S.entries)
    if wanted != got:
        missing = sorted(wanted - got)
        extra = sorted(got - wanted)
        raise ValueError(
            f"shift sequence mismatch: missing {missing[:5]}, extraneous {extra[:5]}"
        )
    return QCProtoMatrix(fss.v, fss.b, S.m, dict(S.entries))


def normalize_shifts(q: QCProtoMatrix) -> QCProtoMatrix:
    """Reduce each block-column so its lowest-indexed cell has shift zero.

    The expansion of the result is code-equivalent (same Tanner girth).
    Idempotent.
    """
    cells = {}
    for j in range(1, q.b + 1):
        col = q.column_cells(j)
        if not col:
            continue
        base = col[0][1]
        for i, s in col:
            cells[(i, j)] = (s - base) % q.m
    return QCProtoMatrix(q.v, q.b, q.m, cells)


def expand(q: QCProtoMatrix) -> BinaryMatrix:
    """Lift the proto matrix to its binary parity-check matrix.

    Each non-empty cell becomes circulant(m, s), each empty cell an m x m
    zero block.  When block-rows outnumber block-columns the transpose is
    returned so the check matrix always has at least as many columns as
    rows; the square case is left untransposed.
    """
    m = q.m
    entries = []
    for (i, j), s in q.cells.items():
        rbase = (i - 1) * m
        cbase = (j - 1) * m
        for r in range(m):
            entries.append((rbase + r, cbase + (r + s) % m))
    H = BinaryMatrix(q.v * m, q.b * m, entries)
    if q.v > q.b:
        H = H.transpose()
    return H


def rate_bound(fss: SetSystem) -> float:
    """Lower bound 1 - min(b, v)/max(b, v) on the lifted code rate."""
    lo, hi = sorted((fss.v, fss.b))
    return 1.0 - lo / hi


def gf2_rank(H: BinaryMatrix) -> int:
    """Rank over GF(2) by dense bitset elimination."""
    if H.cols > 20000:
        raise ValueError("dense GF(2) rank limited to 20000 columns")
    words = (H.cols + 63) // 64
    rows = np.zeros((H.rows, words), dtype=np.uint64)
    for r, c in H.entries():
        rows[r, c >> 6] |= np.uint64(1 << (c & 63))
    rank = 0
    for c in range(H.cols):
        w, bit = c >> 6, np.uint64(1 << (c & 63))
        pivot = None
        for r in range(rank, H.rows):
            if rows[r, w] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        rows[[rank, pivot]] = rows[[pivot, rank]]
        mask = (rows[:, w] & bit).astype(bool)
        mask[rank] = False
        rows[mask] ^= rows[rank]
        rank += 1
        if rank == H.rows:
            break
    return rank


def exact_rate(H: BinaryMatrix) -> float:
    """1 - rank_GF2(H)/n for the code with parity-check matrix H."""
    return 1.0 - gf2_rank(H) / H.cols


# ----------------------------------------------------------------------
# alist I/O (MacKay convention: "ncols nrows" on the first line, 1-based
# adjacency, zero padding for irregular degree lists)
# ----------------------------------------------------------------------

def write_alist(H: BinaryMatrix, path) -> None:
    n, m = H.cols, H.rows
    col_deg = [len(s) for s in H.col_support]
    row_deg = [len(s) for s in H.row_support]
    cmax = max(col_deg, default=0)
    rmax = max(row_deg, default=0)
    lines = [
        f"{n} {m}",
        f"{cmax} {rmax}",
        " ".join(map(str, col_deg)),
        " ".join(map(str, row_deg)),
    ]
    for c in range(n):
        adj = [r + 1 for r in H.col_support[c]]
        adj += [0] * (cmax - len(adj))
        lines.append(" ".join(map(str, adj)))
    for r in range(m):
        adj = [c + 1 for c in H.row_support[r]]
        adj += [0] * (rmax - len(adj))
        lines.append(" ".join(map(str, adj)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> BinaryMatrix:
    with open(path) as fh:
        rows = [line.split() for line in fh if line.strip()]
    nums = [[int(x) for x in row] for row in rows]
    n, m = nums[0]
    entries = []
    for c, adj in enumerate(nums[4 : 4 + n]):
        for r in adj:
            if r:
                entries.append((r - 1, c))
    return BinaryMatrix(m, n, entries)


# ----------------------------------------------------------------------
# shift-sequence serialization
# ----------------------------------------------------------------------

def shifts_to_json(fss: SetSystem, S: ShiftSequence) -> str:
    """Explicit JSON form: one record per incidence, block-major order."""
    recs = [
        {"block": j, "point": i, "s": S.entries[(i, j)]} for i, j in fss.incidences
    ]
    return json.dumps({"m": S.m, "shifts": recs})


def shifts_from_json(fss: SetSystem, text: str) -> ShiftSequence:
    doc = json.loads(text)
    entries = {(rec["point"], rec["block"]): rec["s"] for rec in doc["shifts"]}
    return ShiftSequence(m=doc["m"], entries=entries)


def shift_sequence_from_list(fss: SetSystem, m: int, values) -> ShiftSequence:
    """Build a shift sequence from a flat list in block-major incidence order.

    Two layouts are accepted: one value per incidence, or the compressed
    convention in which the first shift of every block is an implicit zero
    (detected by the entry count).  Any other length is rejected.
    """
    values = list(values)
    sizes = [len(b) for b in fss.blocks]
    full = sum(sizes)
    compressed = sum(k - 1 for k in sizes)
    entries: dict[tuple[int, int], int] = {}
    if len(values) == full:
        it = iter(values)
        for j, blk in enumerate(fss.blocks, start=1):
            for i in blk:
                entries[(i, j)] = next(it) % m
    elif len(values) == compressed and compressed != full:
        it = iter(values)
        for j, blk in enumerate(fss.blocks, start=1):
            entries[(blk[0], j)] = 0
            for i in blk[1:]:
                entries[(i, j)] = next(it) % m
    else:
        raise ValueError(
            f"shift list has {len(values)} entries; expected {full} (explicit) "
            f"or {compressed} (compressed, first shift of each block implicit)"
        )
    return ShiftSequence(m=m, entries=entries)
