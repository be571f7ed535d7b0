"""Command-line front end.

Subcommands: classify, enumerate, corollary-scan, crosscheck, galois-sample.
Data rows go to stdout in a human table, JSON lines or CSV; progress and
diagnostics go to stderr.  Exit codes: 0 success, 1 usage error or
reducible input, 2 an Unknown verdict was encountered.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
from dataclasses import dataclass

from . import arith, classify as cls, galois_verify, indexcheck, poly
from .arith import FactorizationBudgetExceeded
from .classify import Classification, TrinomialFamily
from .indexcheck import GeneralTrinomial, Reducible

CONFIG_ENV_VAR = "MONOTRI_CONFIG"

ROW_FIELDS = [
    "p",
    "a",
    "b",
    "delta",
    "disc_f",
    "irreducible",
    "case",
    "galois",
    "galois_order",
    "monogenic",
    "field_discriminant",
    "reason",
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNKNOWN = 2


@dataclass
class Config:
    trial_bound: int = arith.DEFAULT_TRIAL_BOUND
    rho_budget: int = arith.DEFAULT_RHO_BUDGET
    split_rel_tol: float = galois_verify.DEFAULT_SPLIT_REL_TOL
    prime_budget: int = 2000

    def factor_budget(self):
        return {"trial_bound": self.trial_bound, "rho_budget": self.rho_budget}


def load_config(path: str | None) -> Config:
    cfg = Config()
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return cfg
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key in ("trial_bound", "rho_budget", "prime_budget"):
                setattr(cfg, key, int(value))
            elif key == "split_rel_tol":
                cfg.split_rel_tol = float(value)
            else:
                raise SystemExit(f"unknown config key: {key}")
    return cfg


def classification_row(c: Classification) -> dict:
    fam = c.family
    return {
        "p": fam.p,
        "a": fam.a,
        "b": fam.b,
        "delta": c.delta,
        "disc_f": c.disc_f,
        "irreducible": c.irreducible,
        "case": c.case.kind.value if c.case else None,
        "galois": c.galois.describe(fam.p) if c.galois else None,
        "galois_order": c.galois.order if c.galois else None,
        "monogenic": c.monogenic,
        "field_discriminant": c.field_discriminant,
        "reason": list(c.reason),
    }


class RowWriter:
    """Renders dict rows in the chosen format with a fixed field order."""

    def __init__(self, fmt: str, fields, out=None):
        self.fmt = fmt
        self.fields = fields
        self.out = out or sys.stdout
        self._header_done = False

    def _emit_header(self):
        if self.fmt == "csv":
            w = csv.writer(self.out, lineterminator="\n")
            w.writerow(self.fields)
        elif self.fmt == "human":
            print("  ".join(self.fields), file=self.out)
        self._header_done = True

    def write(self, row: dict):
        if not self._header_done:
            self._emit_header()
        if self.fmt == "jsonl":
            print(
                json.dumps({k: row.get(k) for k in self.fields}, default=str),
                file=self.out,
            )
        elif self.fmt == "csv":
            w = csv.writer(self.out, lineterminator="\n")
            w.writerow([self._flat(row.get(k)) for k in self.fields])
        else:
            print(
                "  ".join(f"{k}={self._flat(row.get(k))}" for k in self.fields),
                file=self.out,
            )

    @staticmethod
    def _flat(v):
        if isinstance(v, list):
            return "; ".join(str(x) for x in v)
        if v is None:
            return ""
        return v


def _add_common(sub):
    sub.add_argument(
        "--format",
        choices=["human", "jsonl", "csv"],
        default="human",
        help="output format for data rows",
    )
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--config", help="key=value config file")
    sub.add_argument(
        "--budget", type=int, help="override the factoring iteration budget"
    )


def _config_from(args) -> Config:
    cfg = load_config(args.config)
    if args.budget is not None:
        cfg.rho_budget = args.budget
    return cfg


def _parse_family(args) -> TrinomialFamily:
    try:
        return TrinomialFamily(args.p, args.a, args.b)
    except ValueError as exc:
        raise SystemExit2(EXIT_USAGE, f"invalid family: {exc}")


class SystemExit2(SystemExit):
    def __init__(self, code, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(code)


def cmd_classify(args) -> int:
    cfg = _config_from(args)
    fam = _parse_family(args)
    c = cls.classify(fam, **cfg.factor_budget())
    RowWriter(args.format, ROW_FIELDS).write(classification_row(c))
    if c.irreducible and c.monogenic is None:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_enumerate(args) -> int:
    cfg = _config_from(args)
    writer = RowWriter(args.format, ROW_FIELDS)
    unknown = False
    p_set = sorted(set(args.p))
    for p in p_set:
        if not arith.is_prime(p) or p < 3:
            raise SystemExit2(EXIT_USAGE, f"p={p} is not an odd prime")
    b_set = sorted(set(args.b))
    lo, hi = args.a_min, args.a_max
    if lo > hi:
        raise SystemExit2(EXIT_USAGE, "empty a range")
    for p in p_set:
        for a in range(lo, hi + 1):
            if a == 0:
                continue
            for b in b_set:
                if b == 0:
                    continue
                fam = TrinomialFamily(p, a, b)
                if args.p_divides_delta and cls.delta(fam) % p != 0:
                    continue
                c = cls.classify(fam, **cfg.factor_budget())
                if args.monogenic_only and not c.monogenic:
                    continue
                if args.case and (
                    c.case is None or c.case.kind.value != args.case
                ):
                    continue
                if c.irreducible and c.monogenic is None:
                    unknown = True
                writer.write(classification_row(c))
    return EXIT_UNKNOWN if unknown else EXIT_OK


SCAN_FIELDS = ["z", "p", "p_is_prime", "a", "b", "monogenic", "galois",
               "galois_order", "unique_a", "consistent"]


def corollary_scan_rows(z_max: int, budget: dict):
    """One row per z; for prime p = z^2 + 4, classify (p, z, -1) and verify
    both the claimed verdict and uniqueness of a."""
    for z in range(1, z_max + 1):
        p = z * z + 4
        row = {"z": z, "p": p, "p_is_prime": arith.is_prime(p)}
        if not row["p_is_prime"]:
            yield row
            continue
        fam = TrinomialFamily(p, z, -1)
        c = cls.classify(fam, **budget)
        row.update(
            a=z,
            b=-1,
            monogenic=c.monogenic,
            galois=c.galois.describe(p) if c.galois else None,
            galois_order=c.galois.order if c.galois else None,
        )
        expected = (
            c.irreducible
            and c.monogenic is True
            and c.galois.kind is cls.GaloisKind.FROBENIUS_P_PMINUS1
        )
        # uniqueness: no other a in [1, isqrt(p)] gives a monogenic
        # (p, a, -1) with the same Galois class
        unique = True
        for a in range(1, math.isqrt(p) + 1):
            if a == z:
                continue
            other = TrinomialFamily(p, a, -1)
            if not cls.family_is_irreducible(other):
                continue
            g = cls.galois_group(other)
            if g.kind is not cls.GaloisKind.FROBENIUS_P_PMINUS1:
                continue
            oc = cls.classify(other, **budget)
            if oc.monogenic:
                unique = False
        row["unique_a"] = unique
        row["consistent"] = expected and unique
        yield row


def cmd_corollary_scan(args) -> int:
    cfg = _config_from(args)
    writer = RowWriter(args.format, SCAN_FIELDS)
    ok = True
    for row in corollary_scan_rows(args.z_max, cfg.factor_budget()):
        writer.write(row)
        if row["p_is_prime"] and not row["consistent"]:
            ok = False
    return EXIT_OK if ok else EXIT_UNKNOWN


def crosscheck_corpus(size: int, seed: int, n_max: int = 12, coeff_max: int = 20):
    """Random irreducible trinomials for the engine-vs-oracle comparison."""
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        n = rng.randrange(2, n_max + 1)
        m = rng.randrange(1, n)
        A = rng.choice([v for v in range(-coeff_max, coeff_max + 1) if v])
        B = rng.choice([v for v in range(-coeff_max, coeff_max + 1) if v])
        t = GeneralTrinomial(n, m, A, B)
        if indexcheck.swan_general_discriminant(t) == 0:
            continue
        if not poly.is_irreducible_over_Q(t.polynomial()):
            continue
        out.append(t)
    return out


def run_crosscheck(corpus, budget: dict, seed: int = 0):
    """Compare the condition-dispatch engine against the Dedekind oracle on
    every prime divisor of every corpus discriminant."""
    total = agreements = disagreements = skipped = 0
    details = []
    for t in corpus:
        d = indexcheck.swan_general_discriminant(t)
        try:
            fac = arith.factorize(d, **budget)
        except FactorizationBudgetExceeded:
            skipped += 1
            continue
        f = t.polynomial()
        for q in sorted(fac.factors):
            jks = indexcheck.jks_index_free(
                t, q, check_irreducible=False, disc=d
            )
            ded = indexcheck.dedekind_divides_index(
                f, q, check_irreducible=False, seed=seed
            )
            total += 1
            if jks.divides_index == ded:
                agreements += 1
            else:
                disagreements += 1
                details.append((t, q, jks.divides_index, ded))
    return {
        "total": total,
        "agreements": agreements,
        "disagreements": disagreements,
        "skipped": skipped,
        "details": details,
    }


def cmd_crosscheck(args) -> int:
    cfg = _config_from(args)
    corpus = crosscheck_corpus(args.size, args.seed)
    print(f"corpus: {len(corpus)} irreducible trinomials", file=sys.stderr)
    report = run_crosscheck(corpus, cfg.factor_budget(), seed=args.seed)
    row = {k: report[k] for k in ("total", "agreements", "disagreements", "skipped")}
    RowWriter(args.format, list(row)).write(row)
    for t, q, jks, ded in report["details"]:
        print(f"disagreement: {t} q={q} jks={jks} dedekind={ded}", file=sys.stderr)
    return EXIT_OK


def cmd_galois_sample(args) -> int:
    cfg = _config_from(args)
    fam = _parse_family(args)
    try:
        claimed = cls.galois_group(fam)
        report = galois_verify.frobenius_sample(
            fam, args.prime_budget, seed=args.seed
        )
    except Reducible as exc:
        raise SystemExit2(EXIT_USAGE, str(exc))
    verdict = galois_verify.consistency_check(
        fam, claimed, report, rel_tol=cfg.split_rel_tol
    )
    row = {
        "p": fam.p,
        "a": fam.a,
        "b": fam.b,
        "claimed": claimed.describe(fam.p),
        "claimed_order": claimed.order,
        "primes_used": report.primes_used,
        "observed_orders": dict(sorted(report.observed_orders.items())),
        "split_fraction": str(report.split_fraction),
        "verdict": verdict,
    }
    if args.format == "jsonl":
        print(json.dumps(row, default=str))
    else:
        for k, v in row.items():
            print(f"{k}: {v}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="monotri",
        description="Monogenicity and Galois classification of trinomials "
        "x^(2p) + a x^p + b^p",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="classify one family (p, a, b)")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-a", type=int, required=True)
    s.add_argument("-b", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("enumerate", help="classify a grid of families")
    s.add_argument("-p", type=int, action="append", required=True,
                   help="prime; repeatable")
    s.add_argument("--a-min", type=int, required=True)
    s.add_argument("--a-max", type=int, required=True)
    s.add_argument("-b", type=int, action="append", required=True,
                   help="constant parameter; repeatable")
    s.add_argument("--monogenic-only", action="store_true")
    s.add_argument("--p-divides-delta", action="store_true")
    s.add_argument("--case", help="filter by case label")
    _add_common(s)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser(
        "corollary-scan",
        help="scan z=1..z_max for primes z^2+4 and verify (p, z, -1)",
    )
    s.add_argument("z_max", type=int)
    _add_common(s)
    s.set_defaults(func=cmd_corollary_scan)

    s = sub.add_parser(
        "crosscheck", help="engine-vs-Dedekind agreement on a random corpus"
    )
    s.add_argument("--size", type=int, default=500)
    _add_common(s)
    s.set_defaults(func=cmd_crosscheck)

    s = sub.add_parser(
        "galois-sample", help="Frobenius sampling against the claimed group"
    )
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-a", type=int, required=True)
    s.add_argument("-b", type=int, required=True)
    s.add_argument("--prime-budget", type=int, default=None)
    _add_common(s)
    s.set_defaults(func=cmd_galois_sample)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors; 2 means Unknown here
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "prime_budget", 1) is None:
        args.prime_budget = _config_from(args).prime_budget
    try:
        return args.func(args)
    except SystemExit2 as exc:
        return exc.code
    except Reducible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
