"""Slow, independent reference computations used by the tests."""

from functools import lru_cache
from itertools import combinations_with_replacement


def divisor_sum(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def coloured_partitions_brute(k, n):
    """Count multisets of coloured parts (size, colour) with total size n."""
    items = [(size, c) for size in range(1, n + 1) for c in range(k)]

    @lru_cache(maxsize=None)
    def count(total, start):
        if total == 0:
            return 1
        out = 0
        for idx in range(start, len(items)):
            size = items[idx][0]
            if size > total:
                break
            out += count(total - size, idx)
        return out

    return count(n, 0)


def eta_power_series(k, n_max):
    """Coefficients of prod_{m>=1} (1 - q^m)^(-k), by multiplying geometric series."""
    coeffs = [1] + [0] * n_max
    for m in range(1, n_max + 1):
        for _ in range(k):
            # multiply by 1/(1 - q^m)
            for i in range(m, n_max + 1):
                coeffs[i] += coeffs[i - m]
    return coeffs


def partitions_brute(n, r):
    """Ascending r-tuples of positive integers summing to n, from all multisets."""
    return sorted(
        c for c in combinations_with_replacement(range(1, n + 1), r) if sum(c) == n
    )


def majorizes_brute(b, a):
    """True when b can be reached from a by unit transfers from larger to smaller parts."""
    seen = {tuple(a)}
    stack = [tuple(a)]
    while stack:
        cur = stack.pop()
        if cur == tuple(b):
            return True
        for i in range(len(cur)):
            for j in range(len(cur)):
                if cur[j] > cur[i]:
                    nxt = list(cur)
                    nxt[i] += 1
                    nxt[j] -= 1
                    nxt = tuple(sorted(nxt))
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    return False
