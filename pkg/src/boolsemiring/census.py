"""Exact census of the composite elements of a grade.

A grade-n element is composite exactly when it is a product of a grade-d
and a grade-(n/d) element for some divisor 1 < d < n, so the composite set
is the union of those product sets.  For rank 1 the nontrivial character
maps grade n injectively onto {-n, -n+2, ..., n}, which turns the census
into counting distinct products of two symmetric progressions.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_ENUM_BUDGET,
    GradeSpec,
    SemiringElement,
    _make,
    canonical_sort,
    checked,
    enumerate_grade,
    grade_array,
    grade_size,
    xor_permutations,
)
from .errors import BudgetExceeded, Undefined
from .factorizer import (
    DEFAULT_DIVIDE_BUDGET,
    Verdict,
    certify,
    is_prime,
    omega,
    proper_divisor_pairs,
    smallest_prime_factor,
)
from .ford import MIN_NORMALIZED, delta, progression_products, symmetric_progression

DEFAULT_BUDGET_PAIRS = 10**9
BRUTE_FORCE_LIMIT = 10**4
# rows of the product block materialized at once
_BLOCK_ROWS = 1 << 18


@dataclass(frozen=True)
class CensusResult:
    rank: int
    grade: int
    grade_size: int
    theta: int
    prime_count: int
    omega: int
    p_minus: int
    normalized: float | None

    FIELDS = ("l", "n", "grade_size", "theta", "prime_count", "omega", "p_minus", "normalized")

    def row(self) -> dict:
        return dict(
            zip(
                self.FIELDS,
                (self.rank, self.grade, self.grade_size, self.theta, self.prime_count,
                 self.omega, self.p_minus, self.normalized),
            )
        )


def crude_bound(spec: GradeSpec) -> int:
    """grade_size - 2^(2l) + 2^l: the grade minus the family g1 + (n-1) g2, g1 != g2."""
    k = 1 << spec.rank
    return grade_size(spec) - k * k + k


def predicted_pairs(spec: GradeSpec) -> int:
    """Number of products formed by the divisor-pair census."""
    return sum(
        grade_size(GradeSpec(spec.rank, d)) * grade_size(GradeSpec(spec.rank, e))
        for d, e in proper_divisor_pairs(spec.grade)
    )


def _require_composite_domain(spec: GradeSpec, budget_pairs: int) -> None:
    if spec.grade < 2:
        raise ValueError(f"census needs n >= 2, got {spec.grade}")
    needed = predicted_pairs(spec)
    if needed > budget_pairs:
        raise BudgetExceeded("census pairs", needed, budget_pairs)


def _product_keys(left: np.ndarray, right: np.ndarray, rank: int) -> set[bytes]:
    """Hash keys (raw int64 bytes) of every product left[i] * right[j]."""
    size = 1 << rank
    perms = [np.asarray(p) for p in xor_permutations(rank)]
    right_by_shift = [right[:, p].T.copy() for p in perms]
    step = max(1, _BLOCK_ROWS // max(1, len(right)))
    keys: set[bytes] = set()
    for start in range(0, len(left), step):
        block = left[start : start + step]
        out = np.empty((len(block), len(right), size), dtype=np.int64)
        for s in range(size):
            out[:, :, s] = block @ right_by_shift[s]
        keys.update(map(bytes, out.reshape(-1, size)))
    return keys


def _resolve_threads(threads: int) -> int:
    if threads == 0:
        return os.cpu_count() or 1
    return max(1, threads)


def composite_keys(spec: GradeSpec, budget_pairs: int = DEFAULT_BUDGET_PAIRS, threads: int = 1) -> set[bytes]:
    _require_composite_domain(spec, budget_pairs)
    checked(spec.grade, "grade")
    pairs = proper_divisor_pairs(spec.grade)
    budget = max(DEFAULT_ENUM_BUDGET, budget_pairs)

    def work(pair: tuple[int, int]) -> set[bytes]:
        d, e = pair
        return _product_keys(
            grade_array(GradeSpec(spec.rank, d), budget), grade_array(GradeSpec(spec.rank, e), budget), spec.rank
        )

    keys: set[bytes] = set()
    threads = _resolve_threads(threads)
    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, pairs))
    else:
        parts = map(work, pairs)
    for part in parts:
        keys |= part
    return keys


def composites_of_grade(
    spec: GradeSpec, budget_pairs: int = DEFAULT_BUDGET_PAIRS, threads: int = 1
) -> frozenset[SemiringElement]:
    """The composite elements of the grade, by direct products over divisor pairs."""
    return frozenset(
        _make(tuple(np.frombuffer(k, dtype=np.int64).tolist()))
        for k in composite_keys(spec, budget_pairs, threads)
    )


def psi_composite_values(n: int, budget_pairs: int = DEFAULT_BUDGET_PAIRS) -> np.ndarray:
    """Rank 1: sorted character values (a - b) of the composite elements a*e + b*h of grade n."""
    spec = GradeSpec(1, n)
    _require_composite_domain(spec, budget_pairs)
    parts = [
        progression_products(symmetric_progression(d), symmetric_progression(e))
        for d, e in proper_divisor_pairs(n)
    ]
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.unique(np.concatenate(parts))


def psi_composites(n: int, budget_pairs: int = DEFAULT_BUDGET_PAIRS) -> frozenset[SemiringElement]:
    """Rank-1 composite set recovered from its character values."""
    return frozenset(
        _make(((n + x) // 2, (n - x) // 2)) for x in psi_composite_values(n, budget_pairs).tolist()
    )


def brute_force_composites(
    spec: GradeSpec, limit: int = BRUTE_FORCE_LIMIT, budget: int = DEFAULT_DIVIDE_BUDGET
) -> frozenset[SemiringElement]:
    """Certify every element of the grade one at a time; keep the composites."""
    size = grade_size(spec)
    if size > limit:
        raise BudgetExceeded("brute force", size, limit)
    return frozenset(
        w for w in enumerate_grade(spec) if certify(w, budget=budget).verdict is Verdict.COMPOSITE
    )


def normalized_theta(spec: GradeSpec, theta_value: int | None = None, budget_pairs: int = DEFAULT_BUDGET_PAIRS) -> float:
    """Theta divided by (n / ((log P)^delta (log log P)^(3/2)))^(2^l - 1), P the least prime factor.

    Defined only for composite n whose least prime factor is at least 16.
    """
    n = spec.grade
    if n < 2 or is_prime(n):
        raise Undefined(f"normalized theta undefined for n={n}: not composite")
    p = smallest_prime_factor(n)
    if p < MIN_NORMALIZED:
        raise Undefined(f"normalized theta undefined for n={n}: least prime factor {p} < {MIN_NORMALIZED}")
    if theta_value is None:
        theta_value = theta(spec, budget_pairs=budget_pairs).theta
    scale = math.log(n) - delta() * math.log(math.log(p)) - 1.5 * math.log(math.log(math.log(p)))
    return math.exp(math.log(theta_value) - ((1 << spec.rank) - 1) * scale)


def count_composites(spec: GradeSpec, method: str = "auto", budget_pairs: int = DEFAULT_BUDGET_PAIRS, threads: int = 1) -> int:
    """Theta_l(n).  ``method`` is "direct", "psi" (rank 1 only) or "auto"."""
    if method == "auto":
        method = "psi" if spec.rank == 1 else "direct"
    if method == "psi":
        if spec.rank != 1:
            raise ValueError("the character shortcut is only available for rank 1")
        return len(psi_composite_values(spec.grade, budget_pairs))
    if method == "direct":
        return len(composite_keys(spec, budget_pairs, threads))
    raise ValueError(f"unknown method {method!r}")


def theta(
    spec: GradeSpec, method: str = "auto", budget_pairs: int = DEFAULT_BUDGET_PAIRS, threads: int = 1
) -> CensusResult:
    n = spec.grade
    if n < 2:
        raise ValueError(f"census needs n >= 2, got {n}")
    size = grade_size(spec)
    count = count_composites(spec, method, budget_pairs, threads)
    try:
        ratio = normalized_theta(spec, count)
    except Undefined:
        ratio = None
    return CensusResult(spec.rank, n, size, count, size - count, omega(n), smallest_prime_factor(n), ratio)


def sorted_composites(spec: GradeSpec, budget_pairs: int = DEFAULT_BUDGET_PAIRS, threads: int = 1) -> list[SemiringElement]:
    return canonical_sort(composites_of_grade(spec, budget_pairs, threads))
