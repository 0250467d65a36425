"""Main term of p_a(n-1) p_a(l+1) - p_a(n) p_a(l) for large l.

With N = n - 1 - a/24 and L = l - a/24 the difference equals

    pi (a/24)^(a/2+1) (N L)^(-(a+5)/4) (sqrt N - sqrt L) exp(pi sqrt(2a/3) (sqrt N + sqrt L))

times a factor in [1/15, 29/15], provided n > l + 1, n, l >= 2 and
L >= max(2 a^11, 100/(a - 24)).  Everything is evaluated as a logarithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

import mpmath

from .core import CountTable, get_table

ERROR_SLACK = Fraction(14, 15)
ERROR_INTERVAL = (1 - ERROR_SLACK, 1 + ERROR_SLACK)


def _exact(alpha):
    # keep rational alphas exact so the threshold comparison is exact
    if isinstance(alpha, Rational):
        return Fraction(alpha)
    return alpha


def shifted(alpha, n: int, ell: int):
    """Return ``(N, L)``."""
    a = _exact(alpha)
    return n - 1 - a / 24, ell - a / 24


def l_threshold(alpha):
    """max{2 a^11, 100/(a-24)}; the second operand is dropped for a <= 24."""
    a = _exact(alpha)
    first = 2 * a**11
    if a <= 24:
        return first
    return max(first, 100 / (a - 24))


@dataclass(frozen=True)
class Applicability:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def applicability(alpha: Real, n: int, ell: int) -> Applicability:
    if alpha < 2:
        return Applicability(False, f"alpha = {alpha} < 2")
    if n < 2 or ell < 2:
        return Applicability(False, "n and l must both be >= 2")
    if n <= ell + 1:
        return Applicability(False, f"n = {n} is not > l + 1 = {ell + 1}")
    _, L = shifted(alpha, n, ell)
    need = l_threshold(alpha)
    if L < need:
        return Applicability(False, f"L = {float(L):.6g} < {float(need):.6g}")
    return Applicability(True, f"L = {float(L):.6g} >= {float(need):.6g}")


@dataclass(frozen=True)
class AsymptoticEstimate:
    alpha: Real
    n: int
    ell: int
    N: Real
    L: Real
    log_main_term: float
    error_factor_interval: tuple[Fraction, Fraction] = ERROR_INTERVAL


def _log_main_term_float(alpha, N, L) -> float:
    a, N, L = float(alpha), float(N), float(L)
    sN, sL = math.sqrt(N), math.sqrt(L)
    return (
        math.log(math.pi)
        + (a / 2 + 1) * math.log(a / 24)
        - (a + 5) / 4 * (math.log(N) + math.log(L))
        # sqrt N - sqrt L loses digits when N ~ L; (N - L)/(sqrt N + sqrt L) does not
        + math.log((N - L) / (sN + sL))
        + math.pi * math.sqrt(2 * a / 3) * (sN + sL)
    )


def _log_main_term_mp(alpha, N, L, dps: int):
    with mpmath.workdps(dps):

        def mpf(x):
            if isinstance(x, Fraction):
                return mpmath.mpf(x.numerator) / x.denominator
            return mpmath.mpf(x)

        a, N, L = mpf(alpha), mpf(N), mpf(L)
        sN, sL = mpmath.sqrt(N), mpmath.sqrt(L)
        val = (
            mpmath.log(mpmath.pi)
            + (a / 2 + 1) * mpmath.log(a / 24)
            - (a + 5) / 4 * (mpmath.log(N) + mpmath.log(L))
            + mpmath.log((N - L) / (sN + sL))
            + mpmath.pi * mpmath.sqrt(2 * a / 3) * (sN + sL)
        )
        return +val


def main_term_log(alpha: Real, n: int, ell: int, dps: int | None = None):
    """Natural log of the main term.

    Doubles by default; pass ``dps`` for an mpmath evaluation at that many
    decimal digits (returned as ``mpmath.mpf``).
    """
    app = applicability(alpha, n, ell)
    if not app:
        raise ValueError(f"main term requested outside its range: {app.reason}")
    N, L = shifted(alpha, n, ell)
    if dps is None:
        return _log_main_term_float(alpha, N, L)
    return _log_main_term_mp(alpha, N, L, dps)


def estimate(alpha: Real, n: int, ell: int) -> AsymptoticEstimate:
    N, L = shifted(alpha, n, ell)
    return AsymptoticEstimate(alpha, n, ell, N, L, main_term_log(alpha, n, ell))


@dataclass(frozen=True)
class DifferenceCertificate:
    estimate: AsymptoticEstimate
    reason: str


@dataclass(frozen=True)
class Refusal:
    reason: str

    def __bool__(self) -> bool:
        return False


def certify_positive_difference(alpha: Real, n: int, ell: int):
    """Certificate that p_a(n-1)p_a(l+1) - p_a(n)p_a(l) > 0, or a Refusal.

    The main term is positive because sqrt N > sqrt L, and the error factor
    stays in [1/15, 29/15], which excludes zero.
    """
    app = applicability(alpha, n, ell)
    if not app:
        return Refusal(app.reason)
    return DifferenceCertificate(estimate(alpha, n, ell), app.reason)


def exact_difference(table: CountTable, n: int, ell: int) -> int:
    return table[n - 1] * table[ell + 1] - table[n] * table[ell]


def log_of_int(x: int) -> float:
    """Natural log of a positive integer of any size."""
    if x <= 0:
        raise ValueError("log of a non-positive integer")
    # math.log handles big ints via their bit length, with double-rounding accuracy
    return math.log(x)


def ratio_check(k: int, n: int, ell: int, table: CountTable | None = None) -> float:
    """exact difference / main term, for integer colour counts."""
    if int(k) != k:
        raise ValueError("ratio_check needs an integer colour count")
    k = int(k)
    app = applicability(k, n, ell)
    if not app:
        raise ValueError(f"not applicable: {app.reason}")
    if table is None:
        table = get_table(k, n)
    elif table.n_max < n:
        raise IndexError(f"table reaches n={table.n_max}, need {n}")
    diff = exact_difference(table, n, ell)
    if diff <= 0:
        return 0.0 if diff == 0 else -math.exp(log_of_int(-diff) - main_term_log(k, n, ell))
    return math.exp(log_of_int(diff) - main_term_log(k, n, ell))


def in_error_interval(ratio: float) -> bool:
    lo, hi = ERROR_INTERVAL
    return float(lo) <= ratio <= float(hi)
