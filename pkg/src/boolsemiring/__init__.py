"""Exact computation in the group semirings N[(Z/2Z)^l]."""

from .characters import CharacterSignature, image_of_grade, inverse_transform, mul_via_characters, transform
from .core import (
    GradeSpec,
    GroupIndex,
    SemiringElement,
    add,
    enumerate_grade,
    grade,
    grade_size,
    group_mul,
    mul,
    units,
)
from .errors import (
    BudgetExceeded,
    CoefficientOverflow,
    NegativeCoefficient,
    NotIntegral,
    OracleMismatch,
    RankMismatch,
    SemiringError,
    Undefined,
)
from .factorizer import Certificate, Verdict, certify, divide, smallest_prime_factor

__all__ = [
    "BudgetExceeded",
    "Certificate",
    "CharacterSignature",
    "CoefficientOverflow",
    "GradeSpec",
    "GroupIndex",
    "NegativeCoefficient",
    "NotIntegral",
    "OracleMismatch",
    "RankMismatch",
    "SemiringElement",
    "SemiringError",
    "Undefined",
    "Verdict",
    "add",
    "certify",
    "divide",
    "enumerate_grade",
    "grade",
    "grade_size",
    "group_mul",
    "image_of_grade",
    "inverse_transform",
    "mul",
    "mul_via_characters",
    "smallest_prime_factor",
    "transform",
    "units",
]
