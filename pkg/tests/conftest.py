import sys
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from boolsemiring import SemiringElement  # noqa: E402


@st.composite
def elements(draw, rank=None, max_coeff=10):
    if rank is None:
        rank = draw(st.integers(1, 4))
    coeffs = draw(st.lists(st.integers(0, max_coeff), min_size=1 << rank, max_size=1 << rank))
    return SemiringElement(tuple(coeffs))


@st.composite
def same_rank(draw, count=2, max_coeff=10):
    rank = draw(st.integers(1, 4))
    return tuple(draw(elements(rank, max_coeff)) for _ in range(count))
