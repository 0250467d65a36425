"""Strict log-concavity of p_k and the two-index cross inequality.

A certificate for ``p_k(n)^2 > p_k(n-1) p_k(n+1)`` is issued by one of four
routes: a direct exact comparison, the truncated-recurrence bounds (k = 4, 5),
the asymptotic main term for very large n, or a reduction of k >= 6 to base
colour counts 3, 4, 5 through convolution.  When no configured route covers
(k, n) the answer is an explicit ``Uncertified``.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import asymptotics
from .bounds import BoundTables, DSchedule, bound_tables, desk_schedule
from .core import CountTable, get_table


class Verdict(enum.Enum):
    STRICT = "strict"
    EQUAL = "equal"
    REVERSED = "reversed"


def compare(left, right) -> Verdict:
    """STRICT if left > right, EQUAL if equal, REVERSED otherwise."""
    if left > right:
        return Verdict.STRICT
    if left == right:
        return Verdict.EQUAL
    return Verdict.REVERSED


def _table(k: int, n: int, table: CountTable | None) -> CountTable:
    if table is None:
        return get_table(k, n)
    if table.n_max < n:
        raise IndexError(f"table for k={table.k} reaches n={table.n_max}, need {n}")
    return table


def is_strictly_logconcave_at(k: int, n: int, table: CountTable | None = None) -> Verdict:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    t = _table(k, n + 1, table)
    return compare(t[n] * t[n], t[n - 1] * t[n + 1])


@dataclass(frozen=True)
class CrossResult:
    k: int
    ell: int
    n: int
    left: int  # p_k(l+1) p_k(n-1)
    right: int  # p_k(l) p_k(n)
    verdict: Verdict


def verify_cross_inequality(
    k: int, ell: int, n: int, table: CountTable | None = None
) -> CrossResult:
    if ell < 0 or n < 1:
        raise ValueError(f"need l >= 0 and n >= 1, got l={ell}, n={n}")
    if ell > n - 2:
        raise ValueError(f"need l <= n - 2, got l={ell}, n={n}")
    t = _table(k, n, table)
    left = t[ell + 1] * t[n - 1]
    right = t[ell] * t[n]
    return CrossResult(k, ell, n, left, right, compare(left, right))


@dataclass(frozen=True, order=True)
class ExceptionRecord:
    k: int
    n: int
    ell: Optional[int]
    kind: str  # "equal" | "reversed"

    def recheck(self, table: CountTable | None = None) -> bool:
        if self.ell is None:
            v = is_strictly_logconcave_at(self.k, self.n, table)
        else:
            v = verify_cross_inequality(self.k, self.ell, self.n, table).verdict
        return v.value == self.kind


# -- configuration -----------------------------------------------------------


def asymptotic_start(k: int) -> int:
    """Least n with applicability of the main term to (k, n+1, n-1)."""
    # L = n - 1 - k/24 >= 2 k^11  <=>  n >= 2 k^11 + k/24 + 1
    bound = 2 * Fraction(k) ** 11 + Fraction(k, 24) + 1
    n = -(-bound.numerator // bound.denominator)
    while not asymptotics.applicability(k, n + 1, n - 1):
        n += 1
    return n


@dataclass
class CertifyConfig:
    """Where each certification route applies.

    ``exact_limit`` caps exact-table work per k; ``schedules`` and
    ``bounds_limit`` enable the bounds route for the listed k.
    """

    exact_limit: dict[int, int] = field(default_factory=dict)
    default_exact_limit: int = 10_000
    schedules: dict[int, DSchedule] = field(default_factory=dict)
    bounds_limit: dict[int, int] = field(default_factory=dict)

    def exact_for(self, k: int) -> int:
        return self.exact_limit.get(k, self.default_exact_limit)

    @classmethod
    def desk(cls) -> CertifyConfig:
        return cls(
            schedules={4: desk_schedule(4), 5: desk_schedule(5)},
            bounds_limit={4: 12_000, 5: 12_000},
        )

    @classmethod
    def full_scale(cls) -> CertifyConfig:
        """Ranges and schedules of the published verification (very long runs)."""
        return cls(
            exact_limit={3: 2 * 3**11 + 1, 4: 200_000, 5: 800_000},
            schedules={4: DSchedule.d4(), 5: DSchedule.d5()},
            bounds_limit={4: 8_400_000, 5: 99_000_000},
        )


_BOUNDS: dict[tuple[int, str], BoundTables] = {}


def _bounds_for(k: int, schedule: DSchedule, n_max: int) -> BoundTables:
    key = (k, schedule.label)
    bt = _BOUNDS.get(key)
    if bt is None or bt.n_max < n_max or bt.schedule != schedule:
        bt = bound_tables(k, schedule, n_max)
        _BOUNDS[key] = bt
    return bt


def _bounds_verdict(bt: BoundTables, n: int) -> Optional[Verdict]:
    """Verdict implied by the bound tables at n, or None if they are inconclusive."""
    lo = [bt.lower_at(m) for m in (n - 1, n, n + 1)]
    hi = [bt.upper_at(m) for m in (n - 1, n, n + 1)]
    if lo == hi:
        # no truncation has reached these indices: the values are exact
        return compare(lo[1] * lo[1], lo[0] * lo[2])
    if bt.d[n] < n and lo[1] * lo[1] >= hi[0] * hi[2]:
        return Verdict.STRICT
    return None


# -- range verification ------------------------------------------------------


@dataclass
class RangeReport:
    k: int
    n_lo: int
    n_hi: int
    method: str
    checked: int = 0
    exceptions: list[ExceptionRecord] = field(default_factory=list)
    uncertified: list[int] = field(default_factory=list)
    by_method: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.exceptions and not self.uncertified


def _scan_exact(k: int, values: Sequence[int], offset: int, lo: int, hi: int):
    # values[i] = p_k(offset + i)
    out = []
    for n in range(lo, hi + 1):
        a, b, c = values[n - 1 - offset], values[n - offset], values[n + 1 - offset]
        v = compare(b * b, a * c)
        if v is not Verdict.STRICT:
            out.append(ExceptionRecord(k, n, None, v.value))
    return out


def _chunks(lo: int, hi: int, parts: int):
    size = max(1, -(-(hi - lo + 1) // parts))
    for start in range(lo, hi + 1, size):
        yield start, min(hi, start + size - 1)


def scan_exact(k: int, n_lo: int, n_hi: int, workers: int = 1) -> list[ExceptionRecord]:
    """Exceptions to strict log-concavity of p_k over [n_lo, n_hi], ascending."""
    table = get_table(k, n_hi + 1)
    if workers <= 1 or n_hi - n_lo < 1000:
        return _scan_exact(k, table.values, 0, n_lo, n_hi)
    jobs = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for lo, hi in _chunks(n_lo, n_hi, workers * 4):
            jobs.append(pool.submit(_scan_exact, k, table.values[lo - 1 : hi + 2], lo - 1, lo, hi))
        found = [rec for job in jobs for rec in job.result()]
    return sorted(found)


def verify_range(
    k: int,
    n_lo: int,
    n_hi: int,
    method: str = "auto",
    config: CertifyConfig | None = None,
    workers: int = 1,
) -> RangeReport:
    """Three-way verdicts for n_lo..n_hi; every non-strict n becomes an exception.

    ``method`` is ``exact``, ``bounds`` or ``auto``.  Under ``auto`` exact
    tables are used up to the configured limit, then bounds (if a schedule is
    configured for k), then the asymptotic route.  Indices no route settles are
    listed in ``uncertified``.
    """
    if n_lo < 1 or n_hi < n_lo:
        raise ValueError(f"bad range [{n_lo}, {n_hi}]")
    if method not in ("auto", "exact", "bounds"):
        raise ValueError(f"unknown method {method!r}")
    config = config or CertifyConfig.desk()
    report = RangeReport(k, n_lo, n_hi, method)

    if method == "exact":
        report.exceptions = scan_exact(k, n_lo, n_hi, workers)
        report.by_method["exact"] = n_hi - n_lo + 1
        report.checked = n_hi - n_lo + 1
        return report

    schedule = config.schedules.get(k)
    if method == "bounds":
        if schedule is None:
            raise ValueError(f"bounds method needs a schedule configured for k={k}")
        _bounds_segment(k, schedule, n_lo, n_hi, report)
        return report

    exact_hi = min(n_hi, config.exact_for(k))
    if exact_hi >= n_lo:
        report.exceptions.extend(scan_exact(k, n_lo, exact_hi, workers))
        report.by_method["exact"] = exact_hi - n_lo + 1
        report.checked += exact_hi - n_lo + 1
    cur = max(n_lo, exact_hi + 1)
    if cur <= n_hi and schedule is not None:
        b_hi = min(n_hi, config.bounds_limit.get(k, 0))
        if b_hi >= cur:
            _bounds_segment(k, schedule, cur, b_hi, report)
            cur = b_hi + 1
    if cur <= n_hi:
        a_lo = max(cur, asymptotic_start(k)) if k >= 2 else n_hi + 1
        report.uncertified.extend(range(cur, min(a_lo, n_hi + 1)))
        if a_lo <= n_hi:
            report.by_method["asymptotic"] = n_hi - a_lo + 1
            report.checked += n_hi - a_lo + 1
    return report


def _bounds_segment(k, schedule, lo, hi, report: RangeReport):
    bt = _bounds_for(k, schedule, hi + 1)
    count = 0
    for n in range(lo, hi + 1):
        v = _bounds_verdict(bt, n)
        if v is None:
            report.uncertified.append(n)
            continue
        count += 1
        if v is not Verdict.STRICT:
            report.exceptions.append(ExceptionRecord(k, n, None, v.value))
    report.by_method["bounds"] = report.by_method.get("bounds", 0) + count
    report.checked += count


# -- certificates ------------------------------------------------------------


class Method(enum.Enum):
    EXACT = "Exact"
    BOUNDS = "Bounds"
    ASYMPTOTIC = "Asymptotic"
    CONVOLUTION = "Convolution"


@dataclass
class Certificate:
    k: int
    n_lo: int
    n_hi: int
    method: Method
    witness: dict

    @property
    def n(self) -> int:
        return self.n_lo

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Uncertified:
    k: int
    n_lo: int
    n_hi: int
    reason: str

    def __bool__(self) -> bool:
        return False


def decompose_k(k: int) -> tuple[int, int, int]:
    """(j1, j2, j3) with k = 3 j1 + 4 j2 + 5 j3."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    q, rem = divmod(k, 3)
    if rem == 0:
        return (q, 0, 0)
    if rem == 1:
        return ((k - 4) // 3, 1, 0)
    return ((k - 5) // 3, 0, 1)


def certify_range(k: int, lo: int, hi: int, config: CertifyConfig | None = None):
    """Certificates covering strict log-concavity of p_k on [lo, hi] for k in {3, 4, 5}.

    Returns a list of segment certificates, or ``Uncertified`` naming the
    first index left uncovered.  Premises are checked as part of issuing.
    """
    config = config or CertifyConfig.desk()
    if k not in (3, 4, 5):
        raise ValueError(f"base ranges are certified for k in {{3, 4, 5}}, got {k}")
    if k == 3 and lo <= 1:
        raise ValueError("p_3 has an equality at n = 1; start at n >= 2")
    certs = []
    cur = lo
    e_hi = min(hi, config.exact_for(k))
    if cur <= e_hi:
        bad = scan_exact(k, cur, e_hi)
        if bad:
            return Uncertified(k, bad[0].n, bad[0].n, f"exact check found {bad[0].kind}")
        certs.append(Certificate(k, cur, e_hi, Method.EXACT, {"table_n_max": e_hi + 1}))
        cur = e_hi + 1
    schedule = config.schedules.get(k)
    if cur <= hi and schedule is not None:
        b_hi = min(hi, config.bounds_limit.get(k, 0))
        if b_hi >= cur:
            bt = _bounds_for(k, schedule, b_hi + 1)
            for n in range(cur, b_hi + 1):
                if _bounds_verdict(bt, n) is not Verdict.STRICT:
                    return Uncertified(k, n, n, "bounds inconclusive")
            certs.append(
                Certificate(k, cur, b_hi, Method.BOUNDS, {"schedule": schedule.label})
            )
            cur = b_hi + 1
    if cur <= hi:
        start = asymptotic_start(k)
        if cur < start:
            return Uncertified(k, cur, min(hi, start - 1), "no configured route covers this gap")
        certs.append(
            Certificate(k, cur, hi, Method.ASYMPTOTIC, {"applicable_from": start})
        )
    return certs


def certify_strict_logconcavity(k: int, n: int, config: CertifyConfig | None = None):
    """Certificate for p_k(n)^2 > p_k(n-1) p_k(n+1), or ``Uncertified``."""
    config = config or CertifyConfig.desk()
    if k < 3:
        raise ValueError(f"certification needs k >= 3, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if (k, n) == (3, 1):
        raise ValueError("(k, n) = (3, 1) is an equality, not a strict inequality")

    if k >= 6:
        if n == 1:
            # p_k(1)^2 = k^2 > k(k+3)/2 = p_k(0) p_k(2) iff k > 3
            return Certificate(k, 1, 1, Method.EXACT, {"closed_form": (k * k, k * (k + 3) // 2)})
        j = decompose_k(k)
        bases = {}
        for base, count in zip((3, 4, 5), j):
            if count:
                res = certify_range(base, 2 if base == 3 else 1, n, config)
                if not res:
                    break
                bases[base] = res
        else:
            witness = {"decomposition": j, "bases": bases}
            if n <= config.exact_for(k):
                witness["direct"] = is_strictly_logconcave_at(k, n).value
            return Certificate(k, n, n, Method.CONVOLUTION, witness)
        app = asymptotics.applicability(k, n + 1, n - 1)
        if app:
            return Certificate(k, n, n, Method.ASYMPTOTIC, {"applicability": app.reason})
        return Uncertified(k, n, n, f"base k={base} range not certified and {app.reason}")

    if n <= config.exact_for(k):
        v = is_strictly_logconcave_at(k, n)
        if v is not Verdict.STRICT:
            return Uncertified(k, n, n, f"exact comparison is {v.value}")
        return Certificate(k, n, n, Method.EXACT, {"table_n_max": n + 1})
    schedule = config.schedules.get(k)
    if schedule is not None and n <= config.bounds_limit.get(k, 0):
        bt = _bounds_for(k, schedule, n + 1)
        if _bounds_verdict(bt, n) is Verdict.STRICT:
            return Certificate(
                k, n, n, Method.BOUNDS,
                {
                    "schedule": schedule.label,
                    "d_n": bt.d[n],
                    "lower": bt.lower[n],
                    "upper_prev": bt.upper[n - 1],
                    "upper_next": bt.upper[n + 1],
                },
            )
    app = asymptotics.applicability(k, n + 1, n - 1)
    if app:
        return Certificate(k, n, n, Method.ASYMPTOTIC, {"applicability": app.reason})
    return Uncertified(k, n, n, f"no configured route covers n={n}: {app.reason}")


def recheck(cert: Certificate, config: CertifyConfig | None = None) -> bool:
    """Re-run the comparisons a certificate rests on."""
    config = config or CertifyConfig.desk()
    k = cert.k
    if cert.method is Method.EXACT:
        if "closed_form" in cert.witness:
            return k * k > k * (k + 3) // 2
        return not scan_exact(k, cert.n_lo, cert.n_hi)
    if cert.method is Method.BOUNDS:
        schedule = config.schedules[k]
        bt = bound_tables(k, schedule, cert.n_hi + 1)
        return all(_bounds_verdict(bt, n) is Verdict.STRICT for n in range(cert.n_lo, cert.n_hi + 1))
    if cert.method is Method.ASYMPTOTIC:
        return bool(asymptotics.applicability(k, cert.n_lo + 1, cert.n_lo - 1))
    if cert.method is Method.CONVOLUTION:
        j = cert.witness["decomposition"]
        if 3 * j[0] + 4 * j[1] + 5 * j[2] != k:
            return False
        return all(recheck(c, config) for segs in cert.witness["bases"].values() for c in segs)
    return False


# -- equivalence of adjacent and cross forms ---------------------------------


def adjacent_all_strict(seq: Sequence, r: int, N: int) -> bool:
    """a_n^2 > a_{n-1} a_{n+1} for every r <= n <= N-1."""
    return all(seq[n] * seq[n] > seq[n - 1] * seq[n + 1] for n in range(r, N))


def cross_all_strict(seq: Sequence, r: int, N: int) -> bool:
    """a_{l+1} a_{m-1} > a_l a_m for every r <= l+1 < m <= N."""
    return all(
        seq[ell + 1] * seq[m - 1] > seq[ell] * seq[m]
        for m in range(r + 1, N + 1)
        for ell in range(r - 1, m - 1)
    )
