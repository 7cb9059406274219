"""Walsh-Hadamard characters of (Z/2Z)^l extended to the semiring.

Character ``j`` sends the group index ``s`` to ``(-1)^popcount(j & s)``;
character 0 is trivial and evaluates an element to its grade.  Each
character is a semiring homomorphism into the integers, and the full
vector of character values determines the element.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_ENUM_BUDGET,
    GradeSpec,
    SemiringElement,
    _check_rank,
    _make,
    _same_rank,
    checked,
    format_coeffs,
    grade,
    grade_array,
    mul,
    parse_ints,
)
from .errors import ElementFormatError, NegativeCoefficient, NotIntegral


@dataclass(frozen=True)
class CharacterSignature:
    """All 2^l character values of an element; ``values[0]`` is the grade."""

    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        size = len(values)
        if size < 2 or size & (size - 1):
            raise ValueError(f"signature length must be a power of two >= 2, got {size}")
        _check_rank(size.bit_length() - 1)
        object.__setattr__(self, "values", values)

    @property
    def rank(self) -> int:
        return len(self.values).bit_length() - 1

    def __str__(self) -> str:
        return format_coeffs(self.values)

    @classmethod
    def parse(cls, text: str) -> CharacterSignature:
        try:
            return cls(tuple(parse_ints(text)))
        except ElementFormatError:
            raise
        except ValueError as exc:
            raise ElementFormatError(str(exc)) from None


def _butterfly(values: list[int]) -> list[int]:
    # in-place unnormalized Walsh-Hadamard transform, natural (bitwise) order
    size = len(values)
    h = 1
    while h < size:
        for start in range(0, size, 2 * h):
            for i in range(start, start + h):
                x, y = values[i], values[i + h]
                values[i], values[i + h] = x + y, x - y
        h *= 2
    return values


def character(j: int, s: int) -> int:
    """Value of character ``j`` on the group element ``s``."""
    return -1 if (j & s).bit_count() & 1 else 1


def transform(u: SemiringElement) -> CharacterSignature:
    return CharacterSignature(tuple(_butterfly(list(u.coeffs))))


def inverse_transform(sig: CharacterSignature) -> SemiringElement:
    """Recover the element with the given signature.

    Raises NotIntegral or NegativeCoefficient when no semiring element has
    this signature.
    """
    size = len(sig.values)
    raw = _butterfly(list(sig.values))
    coeffs = []
    for s, x in enumerate(raw):
        q, r = divmod(x, size)
        if r:
            raise NotIntegral(f"coefficient {s} is {x}/{size}, not an integer")
        if q < 0:
            raise NegativeCoefficient(f"coefficient {s} is {q} < 0")
        coeffs.append(q)
    checked(sum(coeffs), "grade")
    return _make(tuple(coeffs))


def mul_via_characters(u: SemiringElement, v: SemiringElement) -> SemiringElement:
    """Product through the transform: pointwise product of signatures, then invert.

    Exact over the integers; must agree bit-for-bit with :func:`core.mul`.
    """
    _same_rank(u, v)
    checked(grade(u) * grade(v), "grade of product")
    su, sv = transform(u).values, transform(v).values
    out = inverse_transform(CharacterSignature(tuple(a * b for a, b in zip(su, sv))))
    assert out == mul(u, v), "character product disagrees with direct convolution"
    return out


def hadamard_matrix(rank: int) -> np.ndarray:
    """Row j holds character j evaluated on every group index."""
    size = 1 << rank
    return np.array([[character(j, x) for x in range(size)] for j in range(size)], dtype=np.int64)


def grade_images(spec: GradeSpec, budget: int = DEFAULT_ENUM_BUDGET) -> list[frozenset[int]]:
    """Image of the grade under every character, by evaluating each element."""
    values = grade_array(spec, budget) @ hadamard_matrix(spec.rank).T
    return [frozenset(np.unique(values[:, j]).tolist()) for j in range(1 << spec.rank)]


def image_of_grade(
    spec: GradeSpec, j: int, method: str = "closed", budget: int = DEFAULT_ENUM_BUDGET
) -> frozenset[int]:
    """Values taken by character ``j`` on the whole grade.

    ``method="closed"`` uses the arithmetic progression {-n, -n+2, ..., n}
    (or {n} for the trivial character); ``method="direct"`` maps every
    element of the grade.
    """
    if not 0 <= j < 1 << spec.rank:
        raise ValueError(f"character index {j} out of range for rank {spec.rank}")
    n = spec.grade
    if method == "closed":
        if j == 0:
            return frozenset({n})
        return frozenset(range(-n, n + 1, 2))
    if method == "direct":
        signs = np.array([character(j, x) for x in range(1 << spec.rank)], dtype=np.int64)
        return frozenset(np.unique(grade_array(spec, budget) @ signs).tolist())
    raise ValueError(f"unknown method {method!r}")
