"""Exact arithmetic in the graded group semiring N[(Z/2Z)^l].

Group elements of (Z/2Z)^l are l-bit integers and the group law is XOR, so
the identity is index 0 and every element is its own inverse.  A semiring
element is the dense vector of its 2^l natural-number coefficients.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, CoefficientOverflow, ElementFormatError, RankMismatch

MAX_RANK = 6
# checked 64-bit range; signed so that character values always fit too
INT64_MAX = 2**63 - 1
DEFAULT_ENUM_BUDGET = 10**7


def _check_rank(rank: int) -> int:
    if not 1 <= rank <= MAX_RANK:
        raise ValueError(f"rank must be in [1, {MAX_RANK}], got {rank}")
    return rank


def checked(value: int, what: str = "value") -> int:
    """Return ``value`` unchanged, raising if it leaves the 64-bit range."""
    if value > INT64_MAX or value < -INT64_MAX:
        raise CoefficientOverflow(f"{what} {value} does not fit in 64 bits")
    return value


@dataclass(frozen=True)
class GroupIndex:
    """An element of (Z/2Z)^rank encoded by its bit vector."""

    bits: int
    rank: int

    def __post_init__(self):
        _check_rank(self.rank)
        if not 0 <= self.bits < 1 << self.rank:
            raise ValueError(f"index {self.bits} out of range for rank {self.rank}")

    def __mul__(self, other: GroupIndex) -> GroupIndex:
        return group_mul(self, other)

    @property
    def is_identity(self) -> bool:
        return self.bits == 0


def group_mul(s: GroupIndex, t: GroupIndex) -> GroupIndex:
    if s.rank != t.rank:
        raise RankMismatch(f"ranks differ: {s.rank} vs {t.rank}")
    return GroupIndex(s.bits ^ t.bits, s.rank)


@dataclass(frozen=True)
class SemiringElement:
    """A formal sum of group elements with natural-number coefficients.

    ``coeffs[s]`` is the coefficient of the group element with index ``s``;
    the length must be a power of two and fixes the rank.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        size = len(coeffs)
        if size < 2 or size & (size - 1):
            raise ValueError(f"coefficient count must be a power of two >= 2, got {size}")
        _check_rank(size.bit_length() - 1)
        if any(c < 0 for c in coeffs):
            raise ValueError("coefficients must be natural numbers")
        checked(sum(coeffs), "grade")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def rank(self) -> int:
        return len(self.coeffs).bit_length() - 1

    @property
    def grade(self) -> int:
        return sum(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return self.grade == 1

    def __add__(self, other: SemiringElement) -> SemiringElement:
        return add(self, other)

    def __mul__(self, other: SemiringElement) -> SemiringElement:
        return mul(self, other)

    def __str__(self) -> str:
        return format_coeffs(self.coeffs)

    @classmethod
    def parse(cls, text: str) -> SemiringElement:
        """Read the comma-separated text format, e.g. ``"3,1"``."""
        values = parse_ints(text)
        if any(v < 0 for v in values):
            raise ElementFormatError(f"negative coefficient in {text!r}")
        try:
            return cls(tuple(values))
        except ValueError as exc:
            raise ElementFormatError(str(exc)) from None

    @classmethod
    def zero(cls, rank: int) -> SemiringElement:
        return cls((0,) * (1 << _check_rank(rank)))

    @classmethod
    def unit(cls, rank: int, index: int | GroupIndex) -> SemiringElement:
        if isinstance(index, GroupIndex):
            if index.rank != rank:
                raise RankMismatch(f"ranks differ: {rank} vs {index.rank}")
            index = index.bits
        coeffs = [0] * (1 << _check_rank(rank))
        coeffs[index] = 1
        return cls(tuple(coeffs))

    @classmethod
    def identity(cls, rank: int) -> SemiringElement:
        return cls.unit(rank, 0)


def _make(coeffs: tuple[int, ...]) -> SemiringElement:
    # trusted constructor for hot loops: caller guarantees validity
    obj = object.__new__(SemiringElement)
    object.__setattr__(obj, "coeffs", coeffs)
    return obj


def format_coeffs(values: Sequence[int]) -> str:
    return ",".join(str(int(v)) for v in values)


def parse_ints(text: str) -> list[int]:
    """Parse the strict comma-separated integer format (no whitespace)."""
    if not text or any(ch.isspace() for ch in text):
        raise ElementFormatError(f"malformed list {text!r}")
    out = []
    for part in text.split(","):
        body = part[1:] if part[:1] == "-" else part
        if not body.isdigit() or not body.isascii():
            raise ElementFormatError(f"malformed integer {part!r} in {text!r}")
        out.append(int(part))
    return out


@dataclass(frozen=True)
class GradeSpec:
    """The grade-``grade`` slice of the rank-``rank`` semiring."""

    rank: int
    grade: int

    def __post_init__(self):
        _check_rank(self.rank)
        if self.grade < 0:
            raise ValueError("grade must be a natural number")

    @property
    def size(self) -> int:
        return grade_size(self)


def _same_rank(u: SemiringElement, v: SemiringElement) -> int:
    if len(u.coeffs) != len(v.coeffs):
        raise RankMismatch(f"ranks differ: {u.rank} vs {v.rank}")
    return u.rank


def grade(u: SemiringElement) -> int:
    return sum(u.coeffs)


def add(u: SemiringElement, v: SemiringElement) -> SemiringElement:
    _same_rank(u, v)
    checked(grade(u) + grade(v), "grade of sum")
    return _make(tuple(a + b for a, b in zip(u.coeffs, v.coeffs)))


@lru_cache(maxsize=None)
def xor_permutations(rank: int) -> tuple[tuple[int, ...], ...]:
    """Row ``s`` lists ``t ^ s`` for every ``t``."""
    size = 1 << rank
    return tuple(tuple(t ^ s for t in range(size)) for s in range(size))


def mul(u: SemiringElement, v: SemiringElement) -> SemiringElement:
    """Direct XOR convolution, ``c[s] = sum_t u[t] * v[t ^ s]``."""
    rank = _same_rank(u, v)
    checked(grade(u) * grade(v), "grade of product")
    a, b = u.coeffs, v.coeffs
    out = []
    for perm in xor_permutations(rank):
        out.append(sum(x * b[p] for x, p in zip(a, perm) if x))
    return _make(tuple(out))


def grade_size(spec: GradeSpec) -> int:
    """Number of elements of the grade: binom(n + 2^l - 1, 2^l - 1)."""
    parts = 1 << spec.rank
    return checked(math.comb(spec.grade + parts - 1, parts - 1), "grade size")


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts, lexicographically decreasing."""
    if parts < 1:
        raise ValueError("parts must be positive")
    c = [0] * parts
    c[0] = total
    last = parts - 1
    while True:
        yield tuple(c)
        # rightmost nonzero entry strictly before the last slot
        i = last - 1
        while i >= 0 and c[i] == 0:
            i -= 1
        if i < 0:
            return
        c[i] -= 1
        if i + 1 == last:
            c[last] += 1
        else:
            c[i + 1] = c[last] + 1
            c[last] = 0


def enumerate_grade(spec: GradeSpec, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[SemiringElement]:
    """Every element of the grade exactly once, in canonical (lex-decreasing) order."""
    size = grade_size(spec)
    if size > budget:
        raise BudgetExceeded("enumeration", size, budget)
    return map(_make, compositions(spec.grade, 1 << spec.rank))


def grade_array(spec: GradeSpec, budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
    """The grade as an int64 array of shape (grade_size, 2^l), canonical order."""
    size = grade_size(spec)
    if size > budget:
        raise BudgetExceeded("enumeration", size, budget)
    parts = 1 << spec.rank
    out = np.fromiter(
        (x for c in compositions(spec.grade, parts) for x in c), dtype=np.int64, count=size * parts
    )
    return out.reshape(size, parts)


def units(rank: int) -> list[SemiringElement]:
    """The unit group: one grade-1 element per group index."""
    return [SemiringElement.unit(rank, s) for s in range(1 << rank)]


def canonical_sort(elements) -> list[SemiringElement]:
    return sorted(elements, key=lambda u: u.coeffs, reverse=True)
