"""Exact tables of k-coloured partition numbers.

``p_k(n)`` is the coefficient of ``q^n`` in ``prod_{m>=1} (1 - q^m)^(-k)``.
Tables are built from the divisor-sum recurrence

    n p_k(n) = k * sum_{l=1}^{n} sigma(l) p_k(n - l)

and are immutable once constructed.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from operator import mul
from pathlib import Path
from typing import Sequence

CACHE_MAGIC = "PKCACHE"
CACHE_VERSION = 1


class InternalConsistencyError(ArithmeticError):
    """Raised when an identity that must hold exactly does not."""


class CacheFormatError(ValueError):
    pass


def sigma_table(n_max: int) -> list[int]:
    """Divisor sums sigma(1..n_max) by sieve.

    The returned list has length ``n_max + 1``; index 0 holds 0 so that
    ``table[l] == sigma(l)``.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    sig = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            sig[m] += d
    return sig


@dataclass(frozen=True)
class CountTable:
    """Exact values p_k(0..n_max)."""

    k: int
    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    def covers(self, n: int) -> bool:
        return 0 <= n <= self.n_max

    def extend(self, n_max: int) -> CountTable:
        """Return a table reaching ``n_max``; ``self`` is returned if it already does."""
        if n_max <= self.n_max:
            return self
        return CountTable(self.k, tuple(_extend_values(self.k, list(self.values), n_max)))

    def prefix(self, n_max: int) -> CountTable:
        if n_max > self.n_max:
            raise IndexError(f"table for k={self.k} only reaches n={self.n_max}")
        return CountTable(self.k, self.values[: n_max + 1])


def _extend_values(k: int, values: list[int], n_max: int) -> list[int]:
    sig = sigma_table(max(n_max, 1))[1:]
    for n in range(len(values), n_max + 1):
        # values is reversed lazily: sum_{l=1}^{n} sigma(l) p(n-l)
        total = k * sum(map(mul, sig[:n], reversed(values)))
        q, rem = divmod(total, n)
        if rem:
            raise InternalConsistencyError(
                f"non-exact division at k={k}, n={n}: remainder {rem}"
            )
        values.append(q)
    return values


def partition_count_table(k: int, n_max: int) -> CountTable:
    """Exact table of p_k(0..n_max)."""
    if k < 1:
        raise ValueError(f"colour count k must be >= 1, got {k}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    return CountTable(k, tuple(_extend_values(k, [1], n_max)))


_TABLES: dict[int, CountTable] = {}


def get_table(k: int, n_max: int) -> CountTable:
    """Process-wide memoised table for ``k`` covering at least ``n_max``.

    Each call either returns the stored table or replaces it by an extension,
    so readers holding an older table are unaffected.
    """
    table = _TABLES.get(k)
    if table is None:
        table = partition_count_table(k, n_max)
    elif table.n_max < n_max:
        table = table.extend(n_max)
    _TABLES[k] = table
    return table


def convolve(a: Sequence, b: Sequence) -> list:
    """Cauchy product ``e_n = sum_{j<=n} a_j b_{n-j}``.

    Only ``min(len(a), len(b))`` terms are produced, since later terms would
    need entries that neither input provides.
    """
    if len(a) == 0 or len(b) == 0:
        raise ValueError("convolve needs non-empty sequences")
    a = list(a)
    b = list(b)
    length = min(len(a), len(b))
    return [sum(map(mul, a[: n + 1], reversed(b[: n + 1]))) for n in range(length)]


# -- cache files -------------------------------------------------------------


def format_cache(table: CountTable) -> str:
    lines = [f"{CACHE_MAGIC} {CACHE_VERSION} {table.k} {table.n_max}"]
    lines.extend(str(v) for v in table.values)
    return "\n".join(lines) + "\n"


def parse_cache(text: str) -> CountTable:
    lines = text.split("\n")
    if not text.endswith("\n"):
        raise CacheFormatError("cache file must be newline-terminated")
    lines.pop()
    header = lines[0].split(" ")
    if len(header) != 4 or header[0] != CACHE_MAGIC:
        raise CacheFormatError(f"bad cache header: {lines[0]!r}")
    if header[1] != str(CACHE_VERSION):
        raise CacheFormatError(f"unsupported cache version {header[1]}")
    try:
        k, n_max = int(header[2]), int(header[3])
    except ValueError as exc:
        raise CacheFormatError(f"bad cache header: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != n_max + 1:
        raise CacheFormatError(f"expected {n_max + 1} value lines, found {len(body)}")
    for line in body:
        if not line.isdigit() or not line.isascii():
            raise CacheFormatError(f"bad value line {line!r}")
    return CountTable(k, tuple(int(v) for v in body))


def write_cache(table: CountTable, path: str | os.PathLike) -> Path:
    """Write ``table`` to ``path`` atomically (temp file + rename)."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(format_cache(table))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def read_cache(path: str | os.PathLike) -> CountTable:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_cache(fh.read())
