"""Distinct-product counts for multiplication tables and progressions.

Counts are exact.  Positive products that fit under the bitmap budget are
marked in a segmented boolean bitmap; everything else goes through a hashed
set.  The normalized density divides the count by
``m * n / ((log m)^delta * (log log m)^(3/2))``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import checked
from .errors import BudgetExceeded

DEFAULT_BUDGET_BYTES = 256 * 2**20
BITMAP_MAX_PRODUCT = 2**31
MIN_NORMALIZED = 16


def delta() -> float:
    """The multiplication-table exponent 1 - (1 + log log 2) / log 2."""
    return 1.0 - (1.0 + math.log(math.log(2.0))) / math.log(2.0)


def budget_bytes_default() -> int:
    env = os.environ.get("SEMIRING_BUDGET_BYTES")
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError("SEMIRING_BUDGET_BYTES must be positive")
        return value
    return DEFAULT_BUDGET_BYTES


@dataclass(frozen=True)
class ProgressionSpec:
    """The progression {a + j*b : 1 <= j <= count}."""

    a: int
    b: int
    count: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("step must be >= 1")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        checked(self.a + self.count * self.b, "largest term")

    @property
    def first(self) -> int:
        return self.a + self.b

    @property
    def last(self) -> int:
        return self.a + self.count * self.b

    def terms(self) -> np.ndarray:
        return self.a + self.b * np.arange(1, self.count + 1, dtype=np.int64)


def symmetric_progression(n: int) -> ProgressionSpec:
    """{-n, -n+2, ..., n}: the image of grade n under a nontrivial character."""
    return ProgressionSpec(-n - 2, 2, n + 1)


@dataclass(frozen=True)
class DensityRecord:
    m: int
    n: int
    cardinality: int
    normalized: float | None

    FIELDS = ("m", "n", "cardinality", "normalized")

    def row(self) -> dict:
        return {"m": self.m, "n": self.n, "cardinality": self.cardinality, "normalized": self.normalized}


def _segment_size(budget_bytes: int) -> int:
    return max(1 << 12, budget_bytes)


def _bitmap_count(
    rows: list[int],
    col_first: int,
    col_step: int,
    col_count: int,
    budget_bytes: int,
    threads: int = 1,
    upper_half: bool = False,
) -> int:
    """Distinct products of positive ``rows`` with a positive arithmetic progression.

    The columns are ``col_first + i * col_step`` for ``0 <= i < col_count``.
    The product range is cut into segments of at most ``budget_bytes``
    booleans; each row marks its products inside a segment with one strided
    slice.  With ``upper_half`` each row only pairs with columns >= itself,
    valid when the rows are a prefix of the columns.
    """
    col_last = col_first + (col_count - 1) * col_step
    top = rows[-1] * col_last
    seg = max(1 << 12, budget_bytes // max(1, threads))
    bounds = [(lo, min(lo + seg, top + 1)) for lo in range(1, top + 1, seg)]

    def count(bound: tuple[int, int]) -> int:
        lo, hi = bound
        mark = np.zeros(hi - lo, dtype=np.bool_)
        for r in rows:
            # smallest and largest column index i with lo <= r * col(i) < hi
            i0 = max(0, -(-(-(-lo // r) - col_first) // col_step))
            if upper_half:
                i0 = max(i0, -(-(r - col_first) // col_step))
            i1 = min(col_count - 1, ((hi - 1) // r - col_first) // col_step)
            if i0 <= i1:
                a = r * (col_first + i0 * col_step) - lo
                b = r * (col_first + i1 * col_step) - lo
                mark[a : b + 1 : r * col_step] = True
        return int(np.count_nonzero(mark))

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(threads) as pool:
            return sum(pool.map(count, bounds))
    return sum(map(count, bounds))


def _hashed_products(rows: np.ndarray, cols: np.ndarray) -> set[int]:
    out: set[int] = set()
    for r in rows.tolist():
        out.update((cols * r).tolist())
    return out


def progression_products(p: ProgressionSpec, q: ProgressionSpec) -> np.ndarray:
    """Sorted distinct products of the terms of ``p`` and ``q`` (hashed path)."""
    checked(max(abs(p.first), abs(p.last)) * max(abs(q.first), abs(q.last)), "product")
    return np.unique(np.multiply.outer(p.terms(), q.terms()).ravel())


def _resolve_threads(threads: int) -> int:
    if threads == 0:
        return os.cpu_count() or 1
    return max(1, threads)


def multiplication_table_size(
    m: int, n: int, budget_bytes: int | None = None, method: str = "bitmap", threads: int = 1
) -> int:
    """Number of distinct products j1 * j2 with 1 <= j1 <= m, 1 <= j2 <= n."""
    if m < 1 or n < 1:
        raise ValueError("table dimensions must be positive")
    budget_bytes = budget_bytes_default() if budget_bytes is None else budget_bytes
    rows = np.arange(1, min(m, n) + 1, dtype=np.int64)
    cols = np.arange(1, max(m, n) + 1, dtype=np.int64)
    top = checked(m * n, "product")
    if method == "hashed":
        if top > budget_bytes:
            # a set of m*n Python ints costs far more than m*n bytes
            raise BudgetExceeded("bitmap bytes", top, budget_bytes)
        return len(_hashed_products(rows, cols))
    if method != "bitmap":
        raise ValueError(f"unknown method {method!r}")
    if top > BITMAP_MAX_PRODUCT:
        raise BudgetExceeded("bitmap bytes", top, BITMAP_MAX_PRODUCT)
    return _bitmap_count(list(range(1, min(m, n) + 1)), 1, 1, max(m, n), budget_bytes,
                         _resolve_threads(threads), upper_half=True)


def hashed_table_sizes(limit: int) -> list[int]:
    """``[M(1,1), M(2,2), ..., M(limit,limit)]`` from one incremental hashed set.

    Independent of the bitmap path: the square table of side k adds the
    products k * j, j <= k, to the table of side k - 1.
    """
    seen: set[int] = set()
    out = []
    for k in range(1, limit + 1):
        seen.update(range(k, k * k + 1, k))
        out.append(len(seen))
    return out


def progression_product_size(
    p: ProgressionSpec, q: ProgressionSpec, budget_bytes: int | None = None, method: str = "auto"
) -> int:
    """Exact size of the product set {x * y : x in p, y in q}."""
    budget_bytes = budget_bytes_default() if budget_bytes is None else budget_bytes
    top = checked(max(abs(p.first), abs(p.last)) * max(abs(q.first), abs(q.last)), "product")
    positive = p.first > 0 and q.first > 0
    if method == "auto":
        method = "bitmap" if positive and top <= BITMAP_MAX_PRODUCT else "hashed"
    if method == "bitmap":
        if not positive:
            raise ValueError("bitmap path needs positive terms")
        if top > BITMAP_MAX_PRODUCT:
            raise BudgetExceeded("bitmap bytes", top, BITMAP_MAX_PRODUCT)
        if p.count > q.count:
            p, q = q, p
        return _bitmap_count(p.terms().tolist(), q.first, q.b, q.count, budget_bytes)
    if method == "hashed":
        pairs = p.count * q.count
        if pairs * 8 > budget_bytes:
            raise BudgetExceeded("bitmap bytes", pairs * 8, budget_bytes)
        return len(progression_products(p, q))
    raise ValueError(f"unknown method {method!r}")


def normalizer(m: int) -> float:
    """(log m)^delta * (log log m)^(3/2)."""
    return math.log(m) ** delta() * math.log(math.log(m)) ** 1.5


def normalized_density(m: int, n: int, budget_bytes: int | None = None, threads: int = 1) -> DensityRecord:
    if m > n:
        raise ValueError(f"need m <= n, got m={m} > n={n}")
    if m < MIN_NORMALIZED:
        raise ValueError(f"need m >= {MIN_NORMALIZED}, got m={m}")
    card = multiplication_table_size(m, n, budget_bytes, threads=threads)
    return DensityRecord(m, n, card, card * normalizer(m) / (m * n))


def table_record(m: int, n: int, budget_bytes: int | None = None, threads: int = 1) -> DensityRecord:
    """Like :func:`normalized_density`, but the ratio is None outside its domain."""
    if MIN_NORMALIZED <= m <= n:
        return normalized_density(m, n, budget_bytes, threads)
    return DensityRecord(m, n, multiplication_table_size(m, n, budget_bytes, threads=threads), None)


def dyadic_sweep(min_log2: int, max_log2: int, budget_bytes: int | None = None, threads: int = 1) -> list[DensityRecord]:
    """Normalized densities of the square tables of side 2^k, k in [min_log2, max_log2]."""
    if min_log2 > max_log2:
        raise ValueError("empty sweep")
    return [table_record(1 << k, 1 << k, budget_bytes, threads) for k in range(min_log2, max_log2 + 1)]
