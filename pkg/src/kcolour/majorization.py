"""Majorization of equal-length partitions and Robin Hood transfers.

Partitions are kept in ascending order.  ``b`` majorizes ``a`` when every
proper prefix sum of ``b`` is at least the matching prefix sum of ``a``, so the
more balanced partition is the larger one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from itertools import accumulate
from math import prod
from typing import Iterable, Sequence

from .core import CountTable, get_table
from .logconcavity import Verdict, compare


@dataclass(frozen=True, order=True)
class PartitionVec:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if parts[0] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        if any(x > y for x, y in zip(parts, parts[1:])):
            raise ValueError(f"parts must be ascending: {parts}")

    @classmethod
    def of(cls, *parts: int) -> PartitionVec:
        return cls(tuple(parts))

    @classmethod
    def sorted_from(cls, parts: Iterable[int]) -> PartitionVec:
        return cls(tuple(sorted(parts)))

    @classmethod
    def parse(cls, text: str) -> PartitionVec:
        """Parse ``"1,2,10"``; descending or malformed input raises ValueError."""
        try:
            parts = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"malformed partition {text!r}; expected e.g. 1,2,10") from None
        return cls(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    def prefix_sums(self) -> list[int]:
        return list(accumulate(self.parts))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


class Relation(enum.Enum):
    STRICTLY_MAJORIZES = "StrictlyMajorizes"
    EQUAL = "Equal"
    STRICTLY_MAJORIZED_BY = "StrictlyMajorizedBy"
    INCOMPARABLE = "Incomparable"


def majorizes(b: PartitionVec, a: PartitionVec) -> Relation:
    """Relation of ``b`` to ``a``."""
    if a.n != b.n or a.r != b.r:
        raise ValueError(f"need equal total and length: {a} vs {b}")
    ge = le = True
    for pa, pb in zip(a.prefix_sums()[:-1], b.prefix_sums()[:-1]):
        if pb < pa:
            ge = False
        elif pb > pa:
            le = False
    if ge and le:
        return Relation.EQUAL
    if ge:
        return Relation.STRICTLY_MAJORIZES
    if le:
        return Relation.STRICTLY_MAJORIZED_BY
    return Relation.INCOMPARABLE


@dataclass(frozen=True)
class RHStep:
    """Move one unit from position ``j`` to position ``ell`` (1-based)."""

    ell: int
    j: int


def robin_hood(a: PartitionVec, step: RHStep) -> PartitionVec:
    parts = list(a.parts)
    r = len(parts)
    if not (1 <= step.ell <= r and 1 <= step.j <= r):
        raise ValueError(f"step {step} out of range for length {r}")
    if parts[step.j - 1] <= parts[step.ell - 1]:
        raise ValueError(
            f"invalid transfer {step}: part {parts[step.j - 1]} is not larger "
            f"than part {parts[step.ell - 1]}"
        )
    parts[step.ell - 1] += 1
    parts[step.j - 1] -= 1
    return PartitionVec.sorted_from(parts)


def rh_chain(a: PartitionVec, b: PartitionVec) -> list[RHStep]:
    """Robin Hood steps taking ``a`` to ``b`` when ``b`` majorizes ``a``.

    Each step lifts the first position where ``a`` falls short of ``b`` using
    the first later position where it exceeds ``b``.  The donor then exceeds
    the receiver by at least two, so every step is a strict move and the
    chain ends at ``b``.
    """
    rel = majorizes(b, a)
    if rel not in (Relation.STRICTLY_MAJORIZES, Relation.EQUAL):
        raise ValueError(f"{b} does not majorize {a} ({rel.value})")
    steps = []
    cur = a
    while cur != b:
        c, t = cur.parts, b.parts
        i = next(p for p in range(len(c)) if c[p] != t[p])
        j = next(p for p in range(i + 1, len(c)) if c[p] > t[p])
        step = RHStep(i + 1, j + 1)
        steps.append(step)
        cur = robin_hood(cur, step)
    return steps


def apply_chain(a: PartitionVec, steps: Sequence[RHStep]) -> list[PartitionVec]:
    """All intermediates, starting with ``a``."""
    out = [a]
    for s in steps:
        out.append(robin_hood(out[-1], s))
    return out


def pk_product(k: int, v, table: CountTable | None = None) -> int:
    """p_k(v_1) p_k(v_2) ... p_k(v_r)."""
    parts = v.parts if isinstance(v, PartitionVec) else tuple(v)
    if not parts or min(parts) < 0:
        raise ValueError(f"need a non-empty tuple of non-negative integers: {parts}")
    top = max(parts)
    if table is None:
        table = get_table(k, top)
    elif table.n_max < top:
        raise IndexError(f"table reaches n={table.n_max}, need {top}")
    return prod(table[x] for x in parts)


@dataclass(frozen=True)
class ChainStepEvidence:
    step: RHStep
    before: PartitionVec
    after: PartitionVec
    product_before: int
    product_after: int
    case: int  # 1: donor = receiver + 1 (a swap); 2: donor > receiver + 1


@dataclass
class MajorizationVerdict:
    k: int
    a: PartitionVec
    b: PartitionVec
    pk_a: int
    pk_b: int
    verdict: Verdict  # STRICT means p_k(b) > p_k(a)
    chain: list[ChainStepEvidence]
    asserted: bool  # False for k < 3, where nothing is claimed

    @property
    def chain_monotone(self) -> bool:
        return all(e.product_after >= e.product_before for e in self.chain) and (
            self.a == self.b or any(e.product_after > e.product_before for e in self.chain)
        )

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.STRICT and self.chain_monotone


def verify_majorization_inequality(
    k: int, a: PartitionVec, b: PartitionVec, table: CountTable | None = None
) -> MajorizationVerdict:
    """Check p_k(b) > p_k(a) for b strictly majorizing a, with chain evidence.

    For k < 3 the comparison is reported without being asserted.
    """
    rel = majorizes(b, a)
    if rel is not Relation.STRICTLY_MAJORIZES:
        raise ValueError(f"{b} does not strictly majorize {a} ({rel.value})")
    if table is None:
        table = get_table(k, a.n)
    pa, pb = pk_product(k, a, table), pk_product(k, b, table)
    evidence = []
    cur = a
    for step in rh_chain(a, b):
        nxt = robin_hood(cur, step)
        donor, receiver = cur.parts[step.j - 1], cur.parts[step.ell - 1]
        evidence.append(
            ChainStepEvidence(
                step,
                cur,
                nxt,
                pk_product(k, cur, table),
                pk_product(k, nxt, table),
                1 if donor == receiver + 1 else 2,
            )
        )
        cur = nxt
    return MajorizationVerdict(k, a, b, pa, pb, compare(pb, pa), evidence, k >= 3)


# -- exhaustive verification -------------------------------------------------


def _greedy_step(c: tuple[int, ...], t: tuple[int, ...]):
    """One greedy step of ``rh_chain`` on raw tuples: ``(RHStep, next)``."""
    i = next(p for p in range(len(c)) if c[p] != t[p])
    j = next(p for p in range(i + 1, len(c)) if c[p] > t[p])
    nxt = list(c)
    nxt[i] += 1
    nxt[j] -= 1
    nxt.sort()
    return RHStep(i + 1, j + 1), tuple(nxt)


@dataclass
class ExhaustiveReport:
    ks: tuple[int, ...]
    n_max: int
    r_max: int
    pairs: int = 0
    steps: int = 0
    counterexamples: list = dataclass_field(default_factory=list)  # (k, a, b)
    chain_failures: list = dataclass_field(default_factory=list)  # (k, a, b, reason)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.chain_failures

    def merge(self, other: ExhaustiveReport) -> None:
        self.pairs += other.pairs
        self.steps += other.steps
        self.counterexamples.extend(other.counterexamples)
        self.chain_failures.extend(other.chain_failures)


def _exhaustive_nr(ks: tuple[int, ...], n: int, r: int, tables: dict) -> ExhaustiveReport:
    from .stats import enumerate_partitions

    rep = ExhaustiveReport(ks, n, r)
    parts = [p.parts for p in enumerate_partitions(n, r)]
    prods = {k: {p: prod(tables[k][x] for x in p) for p in parts} for k in ks}
    prefix = {p: list(accumulate(p))[:-1] for p in parts}
    for b in parts:
        pb = prefix[b]
        # node -> {k: chain from node to b has a strict step}; every step
        # already replayed into b was non-decreasing for all k
        reached = {b: {k: False for k in ks}}
        for a in parts:
            if a == b:
                continue
            pa = prefix[a]
            if any(x > y for x, y in zip(pa, pb)):
                continue  # b does not majorize a
            rep.pairs += 1
            for k in ks:
                if not prods[k][b] > prods[k][a]:
                    rep.counterexamples.append((k, a, b))
            path = []
            cur = a
            while cur not in reached:
                _, nxt = _greedy_step(cur, b)
                rep.steps += 1
                up = {}
                for k in ks:
                    before, after = prods[k][cur], prods[k][nxt]
                    if after < before:
                        rep.chain_failures.append((k, a, b, f"decrease at {cur} -> {nxt}"))
                    up[k] = after > before
                path.append((cur, up))
                cur = nxt
            flags = reached[cur]
            for node, up in reversed(path):
                flags = {k: up[k] or flags[k] for k in ks}
                reached[node] = flags
            for k in ks:
                if not reached[a][k]:
                    rep.chain_failures.append((k, a, b, "no strict step"))
    return rep


def check_theorem_exhaustive(
    ks: Sequence[int], n_max: int, r_max: int, workers: int = 1
) -> ExhaustiveReport:
    """Every b strictly majorizing a (n <= n_max, 2 <= r <= r_max): p_k(b) > p_k(a).

    Alongside the direct comparison, the greedy Robin Hood chain from a is
    replayed until it reaches b or an intermediate whose own chain to b was
    already replayed; since the greedy chain is deterministic, that suffix is
    the same chain.  Each replayed step must not decrease p_k, and the chain
    of every pair must contain a strict increase.
    """
    ks = tuple(ks)
    tables = {k: get_table(k, n_max).values for k in ks}
    jobs = [(n, r) for n in range(2, n_max + 1) for r in range(2, min(r_max, n) + 1)]
    total = ExhaustiveReport(ks, n_max, r_max)
    if workers <= 1:
        for n, r in jobs:
            total.merge(_exhaustive_nr(ks, n, r, tables))
        return total
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_exhaustive_nr, ks, n, r, tables) for n, r in jobs]
        for f in futures:
            total.merge(f.result())
    return total
