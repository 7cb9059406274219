"""Command-line front end: censuses, certification, transforms and Ford tables.

Exit codes: 0 success, 1 usage or parse error, 2 budget or overflow,
3 oracle mismatch, 4 signature not realized by any element.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import dataclass

from . import census as cen
from .characters import CharacterSignature, inverse_transform, mul_via_characters, transform
from .core import GradeSpec, SemiringElement, add, mul, units
from .errors import (
    BudgetExceeded,
    CoefficientOverflow,
    ElementFormatError,
    NegativeCoefficient,
    NotIntegral,
    OracleMismatch,
    SemiringError,
)
from .factorizer import certify
from .ford import (
    DensityRecord,
    ProgressionSpec,
    budget_bytes_default,
    dyadic_sweep,
    normalizer,
    progression_product_size,
    table_record,
    MIN_NORMALIZED,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    budget_pairs: int = cen.DEFAULT_BUDGET_PAIRS
    budget_bytes: int = 256 * 2**20
    format: str = "csv"
    threads: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.budget_pairs <= 0 or self.budget_bytes <= 0:
            raise UsageError("budgets must be positive")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.threads < 0:
            raise UsageError("threads must be >= 0")


def _emit(rows: list[dict], fields, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out)
        out.write("\n")
        return
    writer = csv.DictWriter(out, fieldnames=list(fields), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else v for k, v in row.items()})


def _config(args) -> RunConfig:
    return RunConfig(
        budget_pairs=args.budget_pairs,
        budget_bytes=args.budget_bytes if args.budget_bytes is not None else budget_bytes_default(),
        format=args.format,
        threads=args.threads,
        seed=args.seed,
    )


def run_census(args, cfg: RunConfig, out) -> int:
    n_max = args.n if args.n_max is None else args.n_max
    if args.n < 2 or n_max < args.n:
        raise UsageError("need 2 <= n <= n-max")
    rows, listing = [], []
    for n in range(args.n, n_max + 1):
        spec = GradeSpec(args.l, n)
        result = cen.theta(spec, budget_pairs=cfg.budget_pairs, threads=cfg.threads)
        row = result.row()
        if args.oracle or args.list:
            direct = cen.composites_of_grade(spec, cfg.budget_pairs, cfg.threads)
            if len(direct) != result.theta:
                raise OracleMismatch(f"l={args.l} n={n}: census count {result.theta} != direct set {len(direct)}")
            if args.oracle:
                brute = cen.brute_force_composites(spec)
                if brute != direct:
                    raise OracleMismatch(f"l={args.l} n={n}: divisor census differs from brute force")
                if args.l == 1 and cen.psi_composites(n, cfg.budget_pairs) != direct:
                    raise OracleMismatch(f"l=1 n={n}: character census differs from direct census")
            if args.list:
                elements = [str(u) for u in cen.canonical_sort(direct)]
                row["composites"] = elements
                listing.extend({"l": args.l, "n": n, "element": e} for e in elements)
        rows.append(row)
    _emit(rows, cen.CensusResult.FIELDS, cfg.format, out)
    if args.list and cfg.format == "csv":
        out.write("\n")
        _emit(listing, ("l", "n", "element"), "csv", out)
    return 0


def run_certify(args, cfg: RunConfig, out) -> int:
    w = SemiringElement.parse(args.coeffs)
    out.write(f"{certify(w)}\n")
    return 0


def run_transform(args, cfg: RunConfig, out) -> int:
    if args.inverse:
        if args.values is None or args.coeffs is not None:
            raise UsageError("--inverse takes --values only")
        out.write(f"{inverse_transform(CharacterSignature.parse(args.values))}\n")
    else:
        if args.coeffs is None or args.values is not None:
            raise UsageError("transform takes --coeffs (or --inverse --values)")
        out.write(f"{transform(SemiringElement.parse(args.coeffs))}\n")
    return 0


def run_ford(args, cfg: RunConfig, out) -> int:
    if args.ford_cmd == "table":
        records = [table_record(args.m, args.n, cfg.budget_bytes, cfg.threads)]
    elif args.ford_cmd == "progression":
        p = ProgressionSpec(args.a1, args.b1, args.m)
        q = ProgressionSpec(args.a2, args.b2, args.n)
        card = progression_product_size(p, q, cfg.budget_bytes)
        ratio = card * normalizer(args.m) / (args.m * args.n) if MIN_NORMALIZED <= args.m <= args.n else None
        records = [DensityRecord(args.m, args.n, card, ratio)]
    else:
        records = dyadic_sweep(args.min_log2, args.max_log2, cfg.budget_bytes, cfg.threads)
    _emit([r.row() for r in records], DensityRecord.FIELDS, cfg.format, out)
    return 0


def run_selftest(args, cfg: RunConfig, out) -> int:
    """Random semiring-law checks, reproducible from ``--seed``."""
    rng = random.Random(cfg.seed)
    for rank in range(1, args.l_max + 1):
        size = 1 << rank
        e = SemiringElement.identity(rank)
        zero = SemiringElement.zero(rank)

        def draw():
            return SemiringElement(tuple(rng.randint(0, 10) for _ in range(size)))

        for _ in range(args.cases):
            u, v, w = draw(), draw(), draw()
            checks = (
                add(u, v) == add(v, u),
                mul(u, v) == mul(v, u),
                mul(mul(u, v), w) == mul(u, mul(v, w)),
                mul(u, add(v, w)) == add(mul(u, v), mul(u, w)),
                add(u, zero) == u and mul(u, e) == u,
                mul(u, v).grade == u.grade * v.grade,
                mul_via_characters(u, v) == mul(u, v),
            )
            if not all(checks):
                raise OracleMismatch(f"semiring law failed at rank {rank}: {u} {v} {w}")
        for g in units(rank):
            if mul(g, g) != e:
                raise OracleMismatch(f"unit {g} is not an involution")
        out.write(f"ok rank={rank} cases={args.cases}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget-pairs", type=int, default=cen.DEFAULT_BUDGET_PAIRS)
    common.add_argument("--budget-bytes", type=int, default=None)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=int, default=0, help="worker cap, 0 = auto")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="boolsemiring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("census", parents=[common], help="count composites of a grade")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n-max", type=int)
    p.add_argument("--list", action="store_true", help="also print the composite elements")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.set_defaults(func=run_census)

    p = sub.add_parser("certify", parents=[common], help="prime/composite verdict for one element")
    p.add_argument("--coeffs", required=True)
    p.set_defaults(func=run_certify)

    p = sub.add_parser("transform", parents=[common], help="character signature of an element")
    p.add_argument("--coeffs")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--values")
    p.set_defaults(func=run_transform)

    p = sub.add_parser("ford", help="multiplication-table and progression product counts")
    ford = p.add_subparsers(dest="ford_cmd", required=True)
    t = ford.add_parser("table", parents=[common])
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--n", type=int, required=True)
    t = ford.add_parser("progression", parents=[common])
    for name in ("--a1", "--b1", "--m", "--a2", "--b2", "--n"):
        t.add_argument(name, type=int, required=True)
    t = ford.add_parser("sweep", parents=[common])
    t.add_argument("--min-log2", type=int, required=True)
    t.add_argument("--max-log2", type=int, required=True)
    p.set_defaults(func=run_ford)

    p = sub.add_parser("selftest", parents=[common], help="random semiring-law checks")
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--l-max", type=int, default=4)
    p.set_defaults(func=run_selftest)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, _config(args), out)
    except (UsageError, ElementFormatError) as exc:
        code, msg = 1, exc
    except (BudgetExceeded, CoefficientOverflow) as exc:
        code, msg = 2, exc
    except OracleMismatch as exc:
        code, msg = 3, exc
    except (NotIntegral, NegativeCoefficient) as exc:
        code, msg = 4, exc
    except (SemiringError, ValueError) as exc:
        code, msg = 1, exc
    err.write("error: " + " ".join(str(msg).split()) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
