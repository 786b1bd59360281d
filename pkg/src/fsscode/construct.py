"""Constructions of set systems with prescribed maximum achievable girth.

Two routes are provided.  ``method1`` lifts a small primitive system through
a circulant expansion and reads the result back as a new, larger system; the
lifted Tanner girth multiplies up, so a few rounds reach large girths.
``method2`` grows a system point-by-point under a prescribed block-size
profile, accepting a point only when no balanced closed walk shorter than
the target appears, with chronological backtracking.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import ceil

from .setsystem import BinaryMatrix, SetSystem, validate_fss
from .girth import GirthReport, inevitable_girth, min_edge_walk
from .qc import ShiftSequence, assemble
from .shiftsearch import SearchPolicy, search_shifts

__all__ = [
    "ConstructionError",
    "ConstructionResult",
    "WeightProfile",
    "method1_lift",
    "method1",
    "method2",
]


class ConstructionError(RuntimeError):
    """Raised when a construction cannot reach its target."""


@dataclass(frozen=True)
class WeightProfile:
    """Ordered target block sizes [k_1..k_b], each at least 2."""

    K: tuple[int, ...]

    def __post_init__(self):
        if not self.K:
            raise ValueError("weight profile must be nonempty")
        for k in self.K:
            if k < 2:
                raise ValueError(f"block sizes must be >= 2, got {k}")

    @property
    def b(self) -> int:
        return len(self.K)

    @classmethod
    def parse(cls, text: str) -> "WeightProfile":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",")))


@dataclass(frozen=True)
class ConstructionResult:
    """status is 'ok', 'infeasible' or 'unknown' (budget exhausted)."""

    status: str
    system: SetSystem | None = None
    report: GirthReport | None = None
    expansions: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def method1_lift(primitive: SetSystem, m: int, S: ShiftSequence) -> SetSystem:
    """Read the circulant expansion of ``primitive`` back as a set system.

    The expansion (untransposed: one row group per point, one column group
    per block) is interpreted as a fresh incidence pattern whose columns are
    the new blocks, giving v*m points and b*m blocks.  Block sizes equal the
    originating block sizes.
    """
    q = assemble(primitive, S)
    entries = []
    for (i, j), s in q.cells.items():
        rbase = (i - 1) * q.m
        cbase = (j - 1) * q.m
        for r in range(q.m):
            entries.append((rbase + r, cbase + (r + s) % q.m))
    H = BinaryMatrix(q.v * q.m, q.b * q.m, entries)
    blocks = [[r + 1 for r in H.col_support[c]] for c in range(H.cols)]
    return validate_fss(q.v * q.m, blocks, primitive.t)


def method1(
    primitive: SetSystem,
    target_g: int,
    m_schedule,
    policy: SearchPolicy | None = None,
) -> ConstructionResult:
    """Iterated lifting: at each round, find shifts whose expansion has the
    best feasible Tanner girth, lift, and re-verify the new system's maximum
    achievable girth; stop once it reaches ``target_g``.

    The lifted girth triples under the re-reading, so a round is only worth
    taking when the primitive admits a lifted girth of at least
    2*ceil(target_g/6); a primitive below that bound is rejected up front.
    """
    if target_g % 2 or target_g < 6:
        raise ValueError("target girth must be even and >= 6")
    policy = policy or SearchPolicy()
    cap = target_g // 2
    current = primitive
    report = inevitable_girth(current, cap=cap)
    needed = 2 * ceil(target_g / 6)
    total_exp = 0
    for m in m_schedule:
        if report.unbounded or report.girth >= target_g:
            break
        if report.girth < needed:
            raise ConstructionError(
                f"maximum achievable girth {report.girth} is below the "
                f"required intermediate girth {needed}"
            )
        lifted = None
        for g_try in range(report.girth, needed - 2, -2):
            res = search_shifts(current, m, g_try, policy=policy)
            total_exp += res.expansions
            if res.status == "ok":
                lifted = res.shifts
                break
        if lifted is None:
            raise ConstructionError(
                f"no shift sequence of order {m} reaches lifted girth "
                f">= {needed} for the current system"
            )
        current = method1_lift(current, m, lifted)
        report = inevitable_girth(current, cap=cap)
    if not report.unbounded and report.girth < target_g:
        raise ConstructionError(
            f"schedule exhausted at achievable girth {report.girth} "
            f"< target {target_g}"
        )
    return ConstructionResult(
        status="ok", system=current, report=report, expansions=total_exp
    )


def method2(
    v: int,
    profile: WeightProfile,
    target_g: int,
    policy: SearchPolicy | None = None,
) -> ConstructionResult:
    """Grow a system on points 1..v matching ``profile`` block by block,
    point by point, so that no balanced closed walk shorter than
    ``target_g``/2 ever forms; chronological backtracking on dead ends.

    Returns status 'infeasible' when the search space is exhausted and
    'unknown' when the expansion budget runs out first.  A returned system
    is re-verified with the independent walk search.
    """
    if target_g % 2 or target_g < 6:
        raise ValueError("target girth must be even and >= 6")
    if v < max(profile.K):
        raise ValueError(f"v={v} is smaller than the largest block size")
    policy = policy or SearchPolicy()
    rng = random.Random(policy.seed)
    max_len = target_g // 2 - 1

    K = profile.K
    slots = [(j, i) for j, k in enumerate(K) for i in range(k)]
    blocks: list[list[int]] = [[] for _ in K]
    stacks: list[list[int]] = []
    expansions = 0
    e = 0
    while e < len(slots):
        j, i = slots[e]
        if len(stacks) == e:
            if i == 0:
                cands = list(range(1, v + 1))
                if policy.order == "random":
                    rng.shuffle(cands)
            else:
                cands = [x for x in range(blocks[j][-1] + 1, v + 1)
                         if _accepts(blocks, j, x, max_len)]
            stacks.append(cands)
        if stacks[e]:
            beta = stacks[e].pop(0)
            expansions += 1
            if expansions > policy.budget:
                return ConstructionResult(status="unknown", expansions=expansions)
            blocks[j].append(beta)
            e += 1
        else:
            stacks.pop()
            if e == 0:
                return ConstructionResult(status="infeasible", expansions=expansions)
            e -= 1
            jj, _ = slots[e]
            blocks[jj].pop()
    system = validate_fss(v, blocks)
    report = inevitable_girth(system, cap=target_g // 2)
    if not report.unbounded and report.girth < target_g:
        raise ConstructionError(
            f"internal check failed: achievable girth {report.girth} "
            f"< target {target_g}"
        )
    return ConstructionResult(
        status="ok", system=system, report=report, expansions=expansions
    )


def _accepts(blocks, j, beta, max_len):
    """True iff appending ``beta`` to block ``j`` (the block being grown)
    closes no balanced walk of length <= max_len through any new incidence
    step (x, block j+1, beta)."""
    trial = [tuple(b) for b in blocks[: j]] + [tuple(blocks[j] + [beta])]
    k0 = len(trial)
    for x in blocks[j]:
        if min_edge_walk(trial, x, k0, beta, max_len) is not None:
            return False
    return True
