"""Exit criteria for the whole package, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line to the
terminal (also without ``-s``) before asserting.
"""

import itertools
import random
import time

import pytest

from boolsemiring import (
    GradeSpec,
    SemiringElement,
    Verdict,
    certify,
    grade_size,
    inverse_transform,
    mul,
    transform,
    units,
)
from boolsemiring.census import (
    brute_force_composites,
    composites_of_grade,
    crude_bound,
    normalized_theta,
    psi_composites,
    theta,
)
from boolsemiring.characters import grade_images
from boolsemiring.factorizer import is_prime
from boolsemiring.ford import dyadic_sweep, hashed_table_sizes, multiplication_table_size

E = SemiringElement
PRIMES_TO_31 = [p for p in range(2, 32) if is_prime(p)]


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return emit


def criterion1_cases():
    return [(l, n) for l in (1, 2) for n in range(2, 13)] + [(1, n) for n in range(13, 65)]


def criterion2_cases():
    return [(l, p) for l in (1, 2) for p in PRIMES_TO_31] + [(3, p) for p in PRIMES_TO_31 if p <= 13]


def test_criterion_01_oracle_equivalence(report):
    start = time.perf_counter()
    mismatches = [
        (l, n)
        for l, n in criterion1_cases()
        if composites_of_grade(GradeSpec(l, n)) != brute_force_composites(GradeSpec(l, n))
    ]
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 120
    report(1, ok, f"divisor census == brute force on {len(criterion1_cases())} grades, mismatches={mismatches}, {elapsed:.1f}s < 120s")
    assert ok


def test_criterion_02_prime_grades(report):
    start = time.perf_counter()
    bad = []
    for l, p in criterion2_cases():
        r = theta(GradeSpec(l, p))
        if r.theta != 0 or r.prime_count != grade_size(GradeSpec(l, p)):
            bad.append((l, p))
    # independent route for the small ones: certify every element
    for l, p in [(1, 31), (2, 5), (2, 7), (3, 2), (3, 3)]:
        if brute_force_composites(GradeSpec(l, p)):
            bad.append(("brute", l, p))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(2, ok, f"theta_l(p) = 0 on {len(criterion2_cases())} prime grades, failures={bad}, {elapsed:.1f}s < 60s")
    assert ok


def test_criterion_03_prime_family(report):
    start = time.perf_counter()
    bad = []
    checked = 0
    for l in (1, 2):
        k = 1 << l
        for n in range(2, 41):
            for g1, g2 in itertools.permutations(range(k), 2):
                c = [0] * k
                c[g1] += 1
                c[g2] += n - 1
                checked += 1
                if certify(E(tuple(c))).verdict is not Verdict.PRIME:
                    bad.append((l, n, g1, g2))
    elapsed = time.perf_counter() - start
    # g1 = e covers every e + (n-1) h with h != e
    ok = not bad and elapsed < 120
    report(3, ok, f"{checked} elements g1 + (n-1) g2 certify Prime, failures={bad}, {elapsed:.1f}s < 120s")
    assert ok


def test_criterion_04_crude_bound(report):
    cases = sorted(set(criterion1_cases()) | set(criterion2_cases()))
    violations = []
    for l, n in cases:
        spec = GradeSpec(l, n)
        th = theta(spec).theta
        if th > crude_bound(spec):
            violations.append((l, n, th, crude_bound(spec)))
    ok = not violations
    report(4, ok, f"theta <= C(n+2^l-1, 2^l-1) - 4^l + 2^l on {len(cases)} censuses, violations (l, n, theta, bound)={violations}")
    assert ok


def test_criterion_05_hand_values(report):
    a, b = theta(GradeSpec(1, 4)), theta(GradeSpec(1, 6))
    got = (a.theta, a.prime_count, b.theta, b.prime_count)
    ok = got == (3, 2, 5, 2)
    report(5, ok, f"(theta_1(4), primes, theta_1(6), primes) = {got}")
    assert ok


def test_criterion_06_characters(report):
    start = time.perf_counter()
    rng = random.Random(6)
    failures = []
    for l in range(1, 5):
        k = 1 << l
        for _ in range(1000):
            u = E(tuple(rng.randint(0, 50) for _ in range(k)))
            if inverse_transform(transform(u)) != u:
                failures.append(("round trip", u))
        for _ in range(200):
            u = E(tuple(rng.randint(0, 10) for _ in range(k)))
            v = E(tuple(rng.randint(0, 10) for _ in range(k)))
            su, sv = transform(u).values, transform(v).values
            if transform(mul(u, v)).values != tuple(x * y for x, y in zip(su, sv)):
                failures.append(("mul hom", u, v))
            if transform(u + v).values != tuple(x + y for x, y in zip(su, sv)):
                failures.append(("add hom", u, v))
    for l in range(1, 4):
        for n in range(0, 21):
            images = grade_images(GradeSpec(l, n))
            if images[0] != {n}:
                failures.append(("trivial image", l, n))
            for j in range(1, 1 << l):
                if images[j] != frozenset(range(-n, n + 1, 2)):
                    failures.append(("image", l, n, j))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    report(6, ok, f"round trip, image law, homomorphism: failures={failures[:5]}, {elapsed:.1f}s < 60s")
    assert ok


def test_criterion_07_psi_shortcut(report):
    start = time.perf_counter()
    composite = [n for n in range(4, 1001) if not is_prime(n)]
    bad = [n for n in composite if psi_composites(n) != composites_of_grade(GradeSpec(1, n))]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    report(7, ok, f"character census == direct census for {len(composite)} composite n <= 1000, mismatches={bad}, {elapsed:.1f}s < 120s")
    assert ok


def test_criterion_08_ford_tables(report):
    start = time.perf_counter()
    small = (multiplication_table_size(3, 3), multiplication_table_size(4, 4))
    hashed = hashed_table_sizes(1 << 10)
    disagree = [k for k in range(1, (1 << 10) + 1) if multiplication_table_size(k, k) != hashed[k - 1]]
    sweep = dyadic_sweep(8, 15)
    values = [r.normalized for r in sweep]
    window = max(values) / min(values)
    elapsed = time.perf_counter() - start
    ok = small == (6, 9) and not disagree and window <= 2 and elapsed < 300
    report(
        8,
        ok,
        f"M(3,3), M(4,4) = {small}; bitmap vs hashed disagreements={disagree}; "
        f"normalized {min(values):.4f}..{max(values):.4f}, window {window:.3f} <= 2; {elapsed:.1f}s < 300s",
    )
    assert ok


def test_criterion_09_theta_trend(report):
    start = time.perf_counter()
    primes = [p for p in range(101, 500) if is_prime(p)]
    values = [normalized_theta(GradeSpec(1, p * p)) for p in primes]
    window = max(values) / min(values)
    elapsed = time.perf_counter() - start
    ok = window <= 3 and elapsed < 300
    report(9, ok, f"normalized theta_1(p^2), {len(primes)} primes in [101, 499]: {min(values):.4f}..{max(values):.4f}, window {window:.3f} <= 3, {elapsed:.1f}s < 300s")
    assert ok


def test_criterion_10_algebra_laws(report):
    start = time.perf_counter()
    rng = random.Random(10)
    failures = []
    for l in range(1, 5):
        k = 1 << l
        zero, e = E.zero(l), E.identity(l)

        def draw():
            return E(tuple(rng.randint(0, 10) for _ in range(k)))

        for _ in range(10**4):
            u, v, w = draw(), draw(), draw()
            uv = mul(u, v)
            ok = (
                u + v == v + u
                and uv == mul(v, u)
                and (u + v) + w == u + (v + w)
                and mul(uv, w) == mul(u, mul(v, w))
                and mul(u, v + w) == uv + mul(u, w)
                and u + zero == u
                and mul(u, e) == u
                and (u + v).grade == u.grade + v.grade
                and uv.grade == u.grade * v.grade
            )
            if not ok:
                failures.append((u, v, w))
        us = units(l)
        if len(us) != k or any(mul(g, g) != e for g in us) or any(
            mul(g, h) not in us for g in us for h in us
        ):
            failures.append(("units", l))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    report(10, ok, f"semiring axioms on 4 x 10^4 random triples, unit group: failures={failures[:3]}, {elapsed:.1f}s < 60s")
    assert ok
