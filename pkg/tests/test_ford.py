import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolsemiring import BudgetExceeded
from boolsemiring.ford import (
    ProgressionSpec,
    budget_bytes_default,
    delta,
    dyadic_sweep,
    hashed_table_sizes,
    multiplication_table_size,
    normalized_density,
    progression_product_size,
    progression_products,
    symmetric_progression,
    table_record,
)
from oracles import naive_table


def test_delta():
    mpmath.mp.dps = 40
    exact = 1 - (1 + mpmath.log(mpmath.log(2))) / mpmath.log(2)
    assert abs(delta() - float(exact)) < 1e-15
    assert round(delta(), 6) == 0.086071
    assert 0 < delta() < 1
    assert abs((1 - delta()) - (1 + math.log(math.log(2))) / math.log(2)) < 1e-15


@pytest.mark.parametrize("m, n, expected", [(3, 3, 6), (4, 4, 9), (1, 17, 17), (10, 10, 42), (100, 100, 2906)])
def test_table_examples(m, n, expected):
    assert multiplication_table_size(m, n) == expected
    assert multiplication_table_size(m, n, method="hashed") == expected


@settings(max_examples=200)
@given(st.integers(1, 60), st.integers(1, 60))
def test_table_matches_naive(m, n):
    assert multiplication_table_size(m, n) == naive_table(m, n)
    assert multiplication_table_size(m, n) == multiplication_table_size(n, m)


def test_table_segmented_bitmap_is_exact():
    # tiny budget forces many segments
    assert multiplication_table_size(300, 700, budget_bytes=5000) == naive_table(300, 700)
    assert multiplication_table_size(300, 700, budget_bytes=5000, threads=3) == naive_table(300, 700)


def test_hashed_incremental_sizes():
    sizes = hashed_table_sizes(200)
    assert sizes == [naive_table(k, k) for k in range(1, 201)]


def test_monotone():
    for m in range(1, 40):
        row = [multiplication_table_size(m, n) for n in range(1, 40)]
        assert row == sorted(row)


def test_bitmap_limit():
    with pytest.raises(BudgetExceeded):
        multiplication_table_size(2**16, 2**16)


def test_progression_examples():
    even2 = ProgressionSpec(0, 2, 2)
    assert progression_product_size(even2, even2) == 3
    first3 = ProgressionSpec(0, 1, 3)
    assert progression_product_size(first3, first3) == 6
    q = ProgressionSpec(5, 3, 40)
    assert progression_product_size(ProgressionSpec(6, 1, 1), q) == 40


@settings(max_examples=200)
@given(
    st.integers(-30, 30), st.integers(1, 7), st.integers(1, 40),
    st.integers(-30, 30), st.integers(1, 7), st.integers(1, 40),
)
def test_progression_matches_naive(a1, b1, m, a2, b2, n):
    p, q = ProgressionSpec(a1, b1, m), ProgressionSpec(a2, b2, n)
    naive = {(a1 + i * b1) * (a2 + j * b2) for i in range(1, m + 1) for j in range(1, n + 1)}
    assert progression_product_size(p, q) == len(naive)
    assert progression_product_size(p, q, method="hashed") == len(naive)
    if a1 >= 0 and a2 >= 0:
        assert progression_product_size(p, q, method="bitmap") == len(naive)


@pytest.mark.parametrize("m, n", [(4096, 4096), (100, 4096), (1000, 3000), (1, 4096)])
def test_progression_reduces_to_table(m, n):
    assert progression_product_size(ProgressionSpec(0, 1, m), ProgressionSpec(0, 1, n)) == multiplication_table_size(m, n)


def test_symmetric_progression():
    assert symmetric_progression(3).terms().tolist() == [-3, -1, 1, 3]
    values = progression_products(symmetric_progression(2), symmetric_progression(3))
    assert values.tolist() == [-6, -2, 0, 2, 6]
    assert progression_product_size(symmetric_progression(2), symmetric_progression(3)) == 5


def test_progression_validation():
    with pytest.raises(ValueError):
        ProgressionSpec(0, 0, 3)
    with pytest.raises(ValueError):
        ProgressionSpec(0, 1, 0)


def test_normalized_density():
    rec = normalized_density(16, 16)
    assert rec.cardinality == naive_table(16, 16) == 97
    expected = 97 * math.log(16) ** delta() * math.log(math.log(16)) ** 1.5 / 256
    assert rec.normalized == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        normalized_density(15, 100)
    with pytest.raises(ValueError):
        normalized_density(100, 50)


def test_normalized_trend_256_vs_4096():
    a = normalized_density(256, 256).normalized
    b = normalized_density(4096, 4096).normalized
    assert 0.5 <= a / b <= 2


def test_table_record_out_of_domain():
    assert table_record(4, 4).normalized is None
    assert table_record(4, 4).cardinality == 9


def test_sweep_rows():
    rows = dyadic_sweep(4, 9)
    assert [r.m for r in rows] == [16, 32, 64, 128, 256, 512]
    assert [r.cardinality for r in rows] == hashed_table_sizes_at([16, 32, 64, 128, 256, 512])


def hashed_table_sizes_at(sides):
    sizes = hashed_table_sizes(max(sides))
    return [sizes[k - 1] for k in sides]


def test_budget_env(monkeypatch):
    monkeypatch.setenv("SEMIRING_BUDGET_BYTES", "4096")
    assert budget_bytes_default() == 4096
    assert multiplication_table_size(200, 200) == naive_table(200, 200)
    monkeypatch.setenv("SEMIRING_BUDGET_BYTES", "0")
    with pytest.raises(ValueError):
        budget_bytes_default()


def test_terms_dtype():
    assert ProgressionSpec(1, 2, 3).terms().dtype == np.int64
