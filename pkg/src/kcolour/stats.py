"""Pair statistics over partitions of n with exactly r parts.

Each unordered pair of distinct partitions is oriented (a before b) and
classified by comparing p_k(a) with p_k(b).  The default orientation takes
all pairs in ascending lexicographic order; ``FIRST_PART`` keeps only pairs
whose smallest parts differ, oriented so that a_1 < b_1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from itertools import accumulate, combinations
from typing import Iterable, Iterator

from .core import CountTable, get_table
from .majorization import PartitionVec, Relation, majorizes


def _ascending(n: int, r: int, smallest: int) -> Iterator[tuple[int, ...]]:
    if r == 1:
        if n >= smallest:
            yield (n,)
        return
    for first in range(smallest, n // r + 1):
        for rest in _ascending(n - first, r - 1, first):
            yield (first,) + rest


def enumerate_partitions(n: int, r: int) -> list[PartitionVec]:
    """Ascending partitions of n into exactly r parts, lexicographically sorted."""
    if r < 1 or r > n:
        raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
    return [PartitionVec(p) for p in _ascending(n, r, 1)]


class PairOrientation(enum.Enum):
    LEX = "lex"  # all pairs, lexicographically smaller first
    LEX_DESC = "lex-desc"  # all pairs, lexicographically larger first
    FIRST_PART = "first-part"  # only a_1 < b_1

    def pairs(self, parts: list[PartitionVec]) -> Iterator[tuple[int, int]]:
        """Index pairs (i, j) meaning a = parts[i], b = parts[j]."""
        if self is PairOrientation.LEX:
            yield from combinations(range(len(parts)), 2)
        elif self is PairOrientation.LEX_DESC:
            for i, j in combinations(range(len(parts)), 2):
                yield j, i
        else:
            for i, j in combinations(range(len(parts)), 2):
                if parts[i].parts[0] < parts[j].parts[0]:
                    yield i, j


@dataclass(frozen=True)
class StatRecord:
    n: int
    r: int
    k: int
    total: int
    lt: int
    eq: int
    gt: int

    def csv_row(self) -> str:
        return f"{self.n},{self.r},{self.k},{self.total},{self.lt},{self.eq},{self.gt}"


def _products(k: int, parts: list[PartitionVec], table: CountTable) -> list[int]:
    out = []
    for p in parts:
        v = 1
        for x in p.parts:
            v *= table[x]
        out.append(v)
    return out


def s_sets(
    k: int,
    n: int,
    r: int,
    orientation: PairOrientation = PairOrientation.LEX,
    table: CountTable | None = None,
) -> StatRecord:
    parts = enumerate_partitions(n, r)
    if table is None:
        table = get_table(k, n - r + 1)
    vals = _products(k, parts, table)
    lt = eq = gt = 0
    for i, j in orientation.pairs(parts):
        a, b = vals[i], vals[j]
        if a < b:
            lt += 1
        elif a == b:
            eq += 1
        else:
            gt += 1
    return StatRecord(n, r, k, lt + eq + gt, lt, eq, gt)


def _partial_major(pa: list[int], pb: list[int], R: int) -> bool:
    strict = False
    for ell in range(R):
        if pa[ell] > pb[ell]:
            return False
        if pa[ell] < pb[ell]:
            strict = True
    return strict


def partial_majorization_pairs(n: int, r: int, R: int) -> list[tuple[PartitionVec, PartitionVec]]:
    """Ordered pairs (a, b) with prefix sums of a <= those of b up to R, strictly somewhere."""
    if not 1 <= R <= r - 1:
        raise ValueError(f"need 1 <= R <= r - 1, got R={R}, r={r}")
    parts = enumerate_partitions(n, r)
    pref = [list(accumulate(p.parts)) for p in parts]
    return [
        (parts[i], parts[j])
        for i in range(len(parts))
        for j in range(len(parts))
        if i != j and _partial_major(pref[i], pref[j], R)
    ]


def strictly_majorizing_pairs(n: int, r: int) -> list[tuple[PartitionVec, PartitionVec]]:
    """Ordered pairs (a, b) with b strictly majorizing a."""
    parts = enumerate_partitions(n, r)
    return [
        (a, b)
        for a in parts
        for b in parts
        if majorizes(b, a) is Relation.STRICTLY_MAJORIZES
    ]


@dataclass
class RScan:
    r: int
    k: int
    per_n: dict[int, int]
    witnesses: dict[int, list[tuple[int, PartitionVec, PartitionVec]]]  # failing pair per smaller R

    @property
    def aggregate(self) -> int:
        return max(self.per_n.values()) if self.per_n else 0


def minimal_R(k: int, n: int, r: int, table: CountTable | None = None):
    """Least R in 1..r-1 for which every pair in S_{n,r,R} has p_k(a) < p_k(b).

    Returns ``(R, witnesses)`` where ``witnesses`` holds one failing pair for
    each R below the minimum.  ``R`` is ``None`` if even R = r - 1 fails.
    """
    if r < 2 or r > n:
        raise ValueError(f"need 2 <= r <= n, got n={n}, r={r}")
    parts = enumerate_partitions(n, r)
    if table is None:
        table = get_table(k, n - r + 1)
    vals = _products(k, parts, table)
    pref = [list(accumulate(p.parts)) for p in parts]
    witnesses = []
    for R in range(1, r):
        bad = next(
            (
                (i, j)
                for i in range(len(parts))
                for j in range(len(parts))
                if i != j and _partial_major(pref[i], pref[j], R) and not vals[i] < vals[j]
            ),
            None,
        )
        if bad is None:
            return R, witnesses
        witnesses.append((R, parts[bad[0]], parts[bad[1]]))
    return None, witnesses


def find_R(r: int, k: int, n_set: Iterable[int]) -> RScan:
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    per_n = {}
    wit = {}
    for n in n_set:
        if n < r:
            continue
        R, w = minimal_R(k, n, r)
        per_n[n] = R
        wit[n] = w
    return RScan(r, k, per_n, wit)


def scan_s_equal(k_range: Iterable[int], n_max: int, r_max: int) -> list[StatRecord]:
    """Every (k, n, r) with r >= 2 whose classification has a tie."""
    found = []
    for k in k_range:
        table = get_table(k, n_max)
        for n in range(2, n_max + 1):
            for r in range(2, min(r_max, n) + 1):
                rec = s_sets(k, n, r, table=table)
                if rec.eq:
                    found.append(rec)
    return found


def percent(part: int, whole: int) -> str:
    """100 * part / whole, rounded half-up to two decimals."""
    if whole == 0:
        return "n/a"
    q = (Decimal(100) * part / Decimal(whole)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    return f"{q}%"


CSV_HEADER = "n,r,k,total,lt,eq,gt"


def markdown_table(records: Iterable[StatRecord]) -> str:
    lines = [
        "| n | r | k | #S | #S< | #S</#S | #S> | #S>/#S |",
        "|---|---|---|---|---|---|---|---|",
    ]
    for s in records:
        lines.append(
            f"| {s.n} | {s.r} | {s.k} | {s.total} | {s.lt} | {percent(s.lt, s.total)} "
            f"| {s.gt} | {percent(s.gt, s.total)} |"
        )
    return "\n".join(lines)


# rows of the published table: (n, r, k, total, lt, gt)
PUBLISHED_TABLE = (
    (13, 3, 4, 91, 87, 4),
    (17, 3, 5, 276, 262, 12),
    (20, 3, 5, 528, 495, 33),
    (20, 4, 4, 2016, 1841, 175),
    (30, 3, 3, 2775, 2566, 209),
    (30, 3, 4, 2775, 2567, 208),
    (30, 3, 5, 2775, 2566, 209),
    (30, 3, 6, 2775, 2565, 210),
    (35, 3, 4, 5151, 4724, 427),
    (35, 3, 5, 5151, 4722, 429),
    (45, 3, 8, 14196, 12943, 1253),
    (45, 4, 5, 225456, 194593, 30863),
    (45, 4, 6, 225456, 194571, 30885),
    (45, 4, 7, 225456, 194539, 30917),
    (45, 4, 8, 225456, 194508, 30948),
    (45, 4, 9, 225456, 194466, 30990),
    (45, 4, 10, 225456, 194425, 31031),
)
