"""Exact division and prime/composite certification of single elements."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .characters import CharacterSignature, inverse_transform, transform
from .core import (
    DEFAULT_ENUM_BUDGET,
    GradeSpec,
    SemiringElement,
    _make,
    _same_rank,
    enumerate_grade,
    grade,
)
from .errors import BudgetExceeded, NegativeCoefficient, NotIntegral

DEFAULT_DIVIDE_BUDGET = 10**7


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError(f"smallest prime factor needs n >= 2, got {n}")
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


def prime_factors(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending."""
    out = []
    while n >= 2:
        p = smallest_prime_factor(n)
        out.append(p)
        n //= p
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def omega(n: int) -> int:
    """Number of prime factors counted with multiplicity."""
    return len(prime_factors(n))


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def proper_divisor_pairs(n: int) -> list[tuple[int, int]]:
    """Pairs (d, n/d) with 1 < d <= n/d, d ascending."""
    return [(d, n // d) for d in divisors(n) if 1 < d and d * d <= n]


class _Meter:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded("division", self.used, self.limit)


def _quotient(
    w: SemiringElement,
    u: SemiringElement,
    sw: tuple[int, ...],
    su: tuple[int, ...],
    m: int,
    meter: _Meter,
) -> SemiringElement | None:
    sv: list[int] = [0] * len(su)
    free = []
    for j, (a, b) in enumerate(zip(su, sw)):
        if a == 0:
            if b != 0:
                return None
            free.append(j)
            continue
        q, r = divmod(b, a)
        if r or abs(q) > m or (m - q) % 2:
            return None
        sv[j] = q

    if not free:
        try:
            return inverse_transform(CharacterSignature(tuple(sv)))
        except (NotIntegral, NegativeCoefficient):
            return None
    known = [j for j in range(len(su)) if su[j] != 0]
    return _search(u, w, known, [sv[j] for j in known], m, meter)


_MAX_DEAD_STATES = 10**6


def _search(
    u: SemiringElement, w: SemiringElement, known: list[int], targets: list[int], m: int, meter: _Meter
) -> SemiringElement | None:
    """Some grade-m ``v`` with ``u * v == w``, by exact constraint search.

    Two families of linear rows constrain v, each of the form
    ``sum_t f(s ^ t) v[t] == Y[s]``: the product itself (f = u, Y = w) and
    its projection onto the known characters (f = G = sum of the known
    characters, Y[s] = sum_j target_j chi_j(s)).  Every row bounds what the
    unassigned coordinates can still contribute, which confines each
    coordinate to an interval; the search branches on the coordinate with
    the narrowest interval, largest value first.  Deterministic, so the
    same inputs always give the same quotient.
    """
    size = len(u.coeffs)
    chi = [[-1 if (j & x).bit_count() & 1 else 1 for x in range(size)] for j in known]
    g = [sum(row[x] for row in chi) for x in range(size)]
    y = [sum(t * row[s] for t, row in zip(targets, chi)) for s in range(size)]
    funcs = (list(u.coeffs), g)
    rhs = list(w.coeffs) + y
    nrows = 2 * size
    # cols[t][r]: weight of v[t] in row r = (family, s)
    cols = [[funcs[r // size][(r % size) ^ t] for r in range(nrows)] for t in range(size)]
    coeffs = [0] * size
    dead: set[tuple] = set()

    def interval(t: int, rest: int, need: list[int], lo: list[int], hi: list[int]) -> tuple[int, int]:
        # v[t] = x must leave every row reachable by rest - x spread over the others
        xlo, xhi = 0, rest
        for c, l_, h_, nd in zip(cols[t], lo, hi, need):
            a, b = c - l_, nd - rest * l_
            if a > 0:
                xhi = min(xhi, b // a)
            elif a < 0:
                xlo = max(xlo, -(b // -a))
            elif b < 0:
                return 1, 0
            a, b = c - h_, nd - rest * h_
            if a > 0:
                xlo = max(xlo, -(-b // a))
            elif a < 0:
                xhi = min(xhi, b // a)
            elif b > 0:
                return 1, 0
            if xlo > xhi:
                return 1, 0
        return xlo, xhi

    def dfs(free: tuple[int, ...], rest: int, need: list[int]) -> bool:
        meter.spend()
        if len(free) == 1:
            t = free[0]
            if any(nd != rest * c for nd, c in zip(need, cols[t])):
                return False
            coeffs[t] = rest
            return True
        key = (free, rest, tuple(need))
        if key in dead:
            return False
        # per row: smallest and largest weight over the free coordinates,
        # plus the runner-up so the extremes over "free minus t" are O(1)
        stats = []
        for r in range(nrows):
            ws = sorted((cols[t][r], t) for t in free)
            stats.append((ws[0], ws[1], ws[-1], ws[-2]))
        best = None
        for t in free:
            lo = [b[0] if a[1] == t else a[0] for a, b, _, _ in stats]
            hi = [d[0] if c[1] == t else c[0] for _, _, c, d in stats]
            xlo, xhi = interval(t, rest, need, lo, hi)
            if xlo > xhi:
                best = None
                break
            if best is None or xhi - xlo < best[2] - best[1]:
                best = (t, xlo, xhi)
                if xlo == xhi:
                    break
        if best is not None:
            t, xlo, xhi = best
            others = tuple(x for x in free if x != t)
            col = cols[t]
            for x in range(xhi, xlo - 1, -1):
                if dfs(others, rest - x, [nd - x * c for nd, c in zip(need, col)]):
                    coeffs[t] = x
                    return True
        if len(dead) < _MAX_DEAD_STATES:
            dead.add(key)
        return False

    if not dfs(tuple(range(size)), m, rhs):
        return None
    return _make(tuple(coeffs))


def divide(
    w: SemiringElement, u: SemiringElement, budget: int = DEFAULT_DIVIDE_BUDGET
) -> SemiringElement | None:
    """Some ``v`` with ``u * v == w``, or None if there is none.

    Quotients need not be unique; the first one found is returned.  Raises
    BudgetExceeded when the search over undetermined characters is larger
    than ``budget`` candidates, which is distinct from "no quotient".
    """
    _same_rank(w, u)
    gu, gw = grade(u), grade(w)
    if gu == 0:
        raise ValueError("cannot divide by the zero element")
    if gw % gu:
        return None
    return _quotient(w, u, transform(w).values, transform(u).values, gw // gu, _Meter(budget))


class Verdict(enum.Enum):
    ZERO = "Zero"
    UNIT = "Unit"
    PRIME = "Prime"
    COMPOSITE = "Composite"


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    witness: tuple[SemiringElement, SemiringElement] | None = None

    def __str__(self) -> str:
        if self.witness is None:
            return self.verdict.value
        u, v = self.witness
        return f"{self.verdict.value} {u} × {v}"


def certify(
    w: SemiringElement,
    budget: int = DEFAULT_DIVIDE_BUDGET,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> Certificate:
    """Decide whether ``w`` is zero, a unit, prime or composite.

    A composite verdict carries a witness ``(u, v)`` with ``u * v == w``,
    ``grade(u) = d`` the least admissible divisor and ``u`` the first
    element of that grade, in canonical order, that divides ``w``.
    """
    n = grade(w)
    if n == 0:
        return Certificate(Verdict.ZERO)
    if n == 1:
        return Certificate(Verdict.UNIT)
    sw = transform(w).values
    meter = _Meter(budget)
    for d, e in proper_divisor_pairs(n):
        for u in enumerate_grade(GradeSpec(w.rank, d), budget=enum_budget):
            v = _quotient(w, u, sw, transform(u).values, e, meter)
            if v is not None:
                return Certificate(Verdict.COMPOSITE, (u, v))
    return Certificate(Verdict.PRIME)
