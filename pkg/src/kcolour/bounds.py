"""Truncated divisor-sum recurrences bracketing p_k(n).

For a truncation schedule ``d`` with ``1 <= d_j <= j``:

    lower(n) = k/n * sum_{l=1}^{d_n} sigma(l) lower(n-l)
    upper(n) = k/n * sum_{l=1}^{d_n} sigma(l) upper(n-l) + k n upper(n-d_n-1)

with both sequences equal to 1 at 0 and to 0 at negative indices.  Values are
exact rationals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Optional

from .core import CountTable, get_table, sigma_table


def iroot(x: int, m: int) -> int:
    """floor(x ** (1/m)) for a non-negative integer ``x``."""
    if x < 0:
        raise ValueError("iroot of a negative number")
    if m == 1 or x < 2:
        return x
    if m == 2:
        return isqrt(x)
    lo, hi = 0, 1 << (x.bit_length() // m + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**m <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def floor_coeff_root(coeff: Fraction, j: int, m: int) -> int:
    """floor(coeff * j**(1/m)) computed without floating point."""
    coeff = Fraction(coeff)
    return iroot(coeff.numerator**m * j // coeff.denominator**m, m)


class ScheduleKind(enum.Enum):
    EXACT = "exact"
    D4 = "d4"
    D5 = "d5"
    CUSTOM = "custom"


# (last j of the piece or None, coefficient, root order); None coefficient means d_j = j
Piece = tuple[Optional[int], Optional[Fraction], int]

D4_PIECES: tuple[Piece, ...] = (
    (200_000, None, 1),
    (3_500_000, Fraction(250), 3),
    (None, Fraction(1125), 3),
)
D5_PIECES: tuple[Piece, ...] = (
    (800_000, None, 1),
    (20_000_000, Fraction(25), 2),
    (None, Fraction(43, 2), 2),
)


def _piecewise(pieces, j: int) -> int:
    for last, coeff, m in pieces:
        if last is None or j <= last:
            return j if coeff is None else floor_coeff_root(coeff, j, m)
    raise AssertionError("piece table must end with an open piece")


def d_schedule_value(kind: ScheduleKind, j: int) -> int:
    if j < 1:
        raise ValueError(f"schedule index must be >= 1, got {j}")
    if kind is ScheduleKind.EXACT:
        return j
    if kind is ScheduleKind.D4:
        return _piecewise(D4_PIECES, j)
    if kind is ScheduleKind.D5:
        return _piecewise(D5_PIECES, j)
    raise ValueError("custom schedules carry their own rule; use DSchedule")


@dataclass(frozen=True)
class DSchedule:
    """Truncation lengths ``j -> d_j``."""

    kind: ScheduleKind
    rule: Optional[Callable[[int], int]] = field(default=None, compare=False)
    name: str = ""

    def __call__(self, j: int) -> int:
        if self.kind is ScheduleKind.CUSTOM:
            if j < 1:
                raise ValueError(f"schedule index must be >= 1, got {j}")
            return self.rule(j)
        return d_schedule_value(self.kind, j)

    @property
    def label(self) -> str:
        return self.name or self.kind.value

    @classmethod
    def exact(cls) -> DSchedule:
        return cls(ScheduleKind.EXACT)

    @classmethod
    def d4(cls) -> DSchedule:
        return cls(ScheduleKind.D4)

    @classmethod
    def d5(cls) -> DSchedule:
        return cls(ScheduleKind.D5)

    @classmethod
    def custom(cls, rule: Callable[[int], int], name: str = "custom") -> DSchedule:
        return cls(ScheduleKind.CUSTOM, rule, name)

    @classmethod
    def piecewise(cls, pieces, name: str = "piecewise") -> DSchedule:
        """Schedule from ``(last_j, coeff, root)`` pieces; ``coeff=None`` means ``d_j = j``."""
        pieces = tuple((last, None if c is None else Fraction(c), m) for last, c, m in pieces)
        return cls(ScheduleKind.CUSTOM, lambda j: _piecewise(pieces, j), name)

    @classmethod
    def constant(cls, c: int) -> DSchedule:
        """``d_j = min(j, c)``."""
        return cls.custom(lambda j: min(j, c), name=f"min(j,{c})")

    def is_truncating(self, j: int) -> bool:
        return self(j) < j


def desk_schedule(k: int) -> DSchedule:
    """Scaled-down analogues of the full-size schedules for k = 4 and k = 5.

    Both switch from d_j = j to a root law at j = 2000; the k = 4 coefficient is
    rescaled so that d_j < j right after the switch.
    """
    if k == 4:
        return DSchedule.piecewise([(2000, None, 1), (None, 100, 3)], name="desk4")
    if k == 5:
        return DSchedule.piecewise([(2000, None, 1), (None, 25, 2)], name="desk5")
    raise ValueError(f"no desk schedule for k={k}")


def schedule_values(schedule: DSchedule, n_max: int) -> list[int]:
    """``[0, d_1, ..., d_{n_max}]`` with each value checked against ``1 <= d_j <= j``."""
    d = [0]
    for j in range(1, n_max + 1):
        v = schedule(j)
        if not 1 <= v <= j:
            raise ValueError(f"schedule {schedule.label} gives d_{j} = {v}, outside [1, {j}]")
        d.append(v)
    return d


@dataclass(frozen=True)
class BoundTables:
    k: int
    schedule: DSchedule
    d: tuple[int, ...]
    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]

    @property
    def n_max(self) -> int:
        return len(self.lower) - 1

    def lower_at(self, n: int) -> Fraction:
        return self.lower[n] if n >= 0 else Fraction(0)

    def upper_at(self, n: int) -> Fraction:
        return self.upper[n] if n >= 0 else Fraction(0)


def _bound_sequence(k: int, d: list[int], sig: list[int], n_max: int, upper: bool):
    # Value m is X[m] / D[m] with D[m] = D[m-1] * fac[m]; every earlier
    # denominator divides every later one, so the truncated sum is evaluated
    # Horner-style over a common denominator without any gcd work.
    X = [1]
    D = [1]
    fac = [1]
    for n in range(1, n_max + 1):
        dn = d[n]
        acc = 0
        for m in range(n - dn, n):
            f = fac[m]
            if f != 1:
                acc *= f
            acc += sig[n - m] * X[m]
        num = k * acc  # over n * D[n-1]
        if upper:
            m = n - dn - 1
            if m >= 0:
                num += k * n * n * X[m] * (D[n - 1] // D[m])
        g = gcd(num, n)
        X.append(num // g)
        fac.append(n // g)
        D.append(D[-1] * (n // g))
    return [Fraction(x, den) for x, den in zip(X, D)]


def bound_tables(k: int, schedule: DSchedule, n_max: int) -> BoundTables:
    if k < 1:
        raise ValueError(f"colour count k must be >= 1, got {k}")
    d = schedule_values(schedule, n_max)
    sig = sigma_table(max(n_max, 1))
    lower = _bound_sequence(k, d, sig, n_max, upper=False)
    upper = _bound_sequence(k, d, sig, n_max, upper=True)
    return BoundTables(k, schedule, tuple(d), tuple(lower), tuple(upper))


@dataclass
class SandwichReport:
    k: int
    schedule: str
    n_max: int
    violations: list[tuple[int, str]]  # (n, "lower" | "upper")
    strictness_failures: list[int]  # truncating n where lower == exact
    truncating: list[int]
    all_j_hypothesis: bool  # d_j < j for every 2 <= j <= n_max

    @property
    def ok(self) -> bool:
        return not self.violations and not self.strictness_failures


def check_sandwich(
    k: int,
    schedule: DSchedule,
    n_max: int,
    table: CountTable | None = None,
    bounds: BoundTables | None = None,
) -> SandwichReport:
    """Compare the bound tables with exact values for 1 <= n <= n_max.

    Strictness of the lower bound is required at every n with d_n < n.  That
    per-n reading is reported alongside whether the schedule truncates at every
    j >= 2 (d_1 = 1 cannot truncate).
    """
    table = table if table is not None else get_table(k, n_max)
    bounds = bounds if bounds is not None else bound_tables(k, schedule, n_max)
    violations = []
    strict_fail = []
    truncating = []
    for n in range(1, n_max + 1):
        exact = table[n]
        lo, hi = bounds.lower[n], bounds.upper[n]
        if lo > exact:
            violations.append((n, "lower"))
        if exact > hi:
            violations.append((n, "upper"))
        if bounds.d[n] < n:
            truncating.append(n)
            if lo == exact:
                strict_fail.append(n)
    all_j = all(bounds.d[j] < j for j in range(2, n_max + 1))
    return SandwichReport(k, schedule.label, n_max, violations, strict_fail, truncating, all_j)


@dataclass(frozen=True)
class RatioVerdict:
    n: int
    passes: bool  # lower(n)^2 >= upper(n-1) upper(n+1)
    truncating: bool  # d_n < n, so lower(n) < p_k(n) strictly


def check_ratio_condition(
    k: int,
    schedule: DSchedule,
    n_lo: int,
    n_hi: int,
    bounds: BoundTables | None = None,
) -> list[RatioVerdict]:
    if n_lo < 1 or n_hi < n_lo:
        raise ValueError(f"bad range [{n_lo}, {n_hi}]")
    if bounds is None or bounds.n_max < n_hi + 1:
        bounds = bound_tables(k, schedule, n_hi + 1)
    out = []
    for n in range(n_lo, n_hi + 1):
        lo = bounds.lower[n]
        ok = lo * lo >= bounds.upper_at(n - 1) * bounds.upper[n + 1]
        out.append(RatioVerdict(n, ok, bounds.d[n] < n))
    return out
