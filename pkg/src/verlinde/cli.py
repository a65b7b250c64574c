"""Command-line front end: ``ver``, ``crosscheck`` and ``bases``.

Exit codes: 0 success, 1 a check or route comparison failed, 2 usage error.
"""

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations

from . import checks
from .diagonal_bases import (
    bases_from_json,
    bases_to_json,
    hamiltonian_basis,
    is_diagonal,
    nbc_basis,
    parse_root_order,
)
from .residue_engine import VerlindeInput, ver_residue
from .verlinde_sum import DEFAULT_PRECISION, PrecisionError, ver_sum
from .weight_space import admissible_weights, in_closed_simplex, parse_weight

__all__ = ["main", "RunConfig", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_BASES_RANK = 6


class UsageError(Exception):
    pass


def fmt_q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def parse_range(text):
    """'3', '1-4' or '1,2,5' (mixed forms allowed) to a sorted tuple of ints."""
    out = set()
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1) if not part.startswith("-") else (None, None)
            if lo is None:
                raise UsageError("bad range %r" % part)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError("empty range %r" % part)
            out.update(range(lo, hi + 1))
        else:
            out.add(int(part))
    if not out:
        raise UsageError("empty range %r" % text)
    return tuple(sorted(out))


class RunConfig:
    """Validated settings for one ``ver`` run."""

    def __init__(self, r, g, k, lambdas=None, grid=False, routes=("sum", "residue"),
                 precision=DEFAULT_PRECISION, truncation_extra=0, basis="hamiltonian:1",
                 jobs=1, fmt="json", both_sides=False):
        self.r, self.g, self.k = tuple(r), tuple(g), tuple(k)
        if not (self.r and self.g and self.k):
            raise UsageError("r, g and k ranges must be nonempty")
        if min(self.r) < 2 or min(self.g) < 1 or min(self.k) < 1:
            raise UsageError("need r >= 2, g >= 1, k >= 1")
        if precision < 64:
            raise UsageError("precision must be at least 64 bits")
        unknown = set(routes) - {"sum", "residue"}
        if unknown or not routes:
            raise UsageError("routes must be a nonempty subset of sum,residue")
        if lambdas is None and not grid:
            raise UsageError("give --lambda or --grid")
        self.lambdas = lambdas
        self.grid = grid
        self.routes = tuple(routes)
        self.precision = precision
        self.truncation_extra = truncation_extra
        self.basis = basis
        self.jobs = max(1, jobs)
        self.fmt = fmt
        self.both_sides = both_sides
        self.basis_sets(2)  # validate the basis choice early

    def basis_sets(self, r):
        """Named basis sets to evaluate the residue route with."""
        kind, _, arg = self.basis.partition(":")
        if kind == "hamiltonian":
            m = int(arg or 1)
            if not 1 <= m <= max(self.r):
                raise UsageError("hamiltonian vertex m out of range")
            return [("H%d" % m, hamiltonian_basis(min(m, r), r))]
        if kind == "nbc":
            order = list(combinations(range(1, r + 1), 2))
            if arg:
                random.Random(int(arg)).shuffle(order)
            return [("nbc%s" % (":" + arg if arg else ""), nbc_basis(order, r))]
        if kind == "all":
            sets = [("H%d" % m, hamiltonian_basis(m, r)) for m in range(1, r + 1)]
            sets += [(name, d) for name, d in checks.standard_basis_sets(r).items()
                     if name.startswith("nbc")]
            return sets
        raise UsageError("basis must be hamiltonian[:m], nbc[:seed] or all")

    def tasks(self):
        out = []
        for r in self.r:
            for g in self.g:
                for k in self.k:
                    if self.grid:
                        weights = admissible_weights(r, k)
                    else:
                        weights = []
                        for lam in self.lambdas:
                            if len(lam) != r:
                                raise UsageError("weight %s does not have %d entries" % (list(lam), r))
                            if not in_closed_simplex(lam.scale(Fraction(1, k))):
                                raise UsageError("weight %s/%d outside the closed simplex" % (list(lam), k))
                            weights.append(lam)
                    for lam in weights:
                        out.append((r, g, k, tuple(lam.ints())))
        return out


def compute_record(cfg, task):
    r, g, k, lam = task
    start = time.perf_counter()
    record = {"r": r, "g": g, "k": k, "lambda": list(lam), "routes": {}, "checks": []}
    values = []
    if "sum" in cfg.routes:
        s = ver_sum(r, g, k, lam, cfg.precision)
        record["routes"]["sum"] = {"nearest_int": s.nearest_int, "err_bound": s.err_bound,
                                   "precision": s.precision}
        values.append(("sum", Fraction(s.nearest_int)))
    if "residue" in cfg.routes:
        inp = VerlindeInput(r, g, k, lam)
        per_basis = {}
        for name, bases in cfg.basis_sets(r):
            per_basis[name] = ver_residue(inp, bases, extra=cfg.truncation_extra)
            if cfg.both_sides:
                per_basis[name + "/other_side"] = ver_residue(
                    inp, bases, side=-1, extra=cfg.truncation_extra)
        first = next(iter(per_basis.values()))
        record["routes"]["residue"] = fmt_q(first)
        if len(per_basis) > 1:
            record["routes"]["per_basis"] = {n: fmt_q(v) for n, v in per_basis.items()}
        values.extend(("residue[%s]" % n, v) for n, v in per_basis.items())
        record["checks"].append({"name": "residue_integral",
                                 "passed": all(v.denominator == 1 for v in per_basis.values())})
    if len(values) > 1:
        agree = len({v for _, v in values}) == 1
        check = {"name": "routes_agree", "passed": agree}
        if not agree:
            check["diff"] = {n: fmt_q(v) for n, v in values}
        record["checks"].append(check)
    record["ok"] = all(c["passed"] for c in record["checks"])
    record["timing_s"] = round(time.perf_counter() - start, 6)
    return record


def _run_tasks(cfg, tasks):
    if cfg.jobs == 1 or len(tasks) < 2:
        return [compute_record(cfg, t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(compute_record, [cfg] * len(tasks), tasks))


CSV_FIELDS = ["r", "g", "k", "lambda", "sum_int", "sum_err_bound", "residue", "residue_int", "ok", "timing_s"]


def write_records(records, fmt, out):
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        s = rec["routes"].get("sum", {})
        res = rec["routes"].get("residue")
        res_int = ""
        if res is not None and Fraction(res).denominator == 1:
            res_int = int(Fraction(res))
        writer.writerow({
            "r": rec["r"], "g": rec["g"], "k": rec["k"],
            "lambda": " ".join(str(x) for x in rec["lambda"]),
            "sum_int": s.get("nearest_int", ""), "sum_err_bound": s.get("err_bound", ""),
            "residue": res if res is not None else "", "residue_int": res_int,
            "ok": rec["ok"], "timing_s": rec["timing_s"],
        })
    out.write(buf.getvalue())


def _parse_lambdas(values):
    out = []
    for text in values or []:
        for item in text.split(";"):
            if item.strip():
                out.append(parse_weight(item))
    return out


def cmd_ver(args, out):
    try:
        lambdas = _parse_lambdas(args.lam) if args.lam else None
    except ValueError as exc:
        raise UsageError(str(exc))
    cfg = RunConfig(
        parse_range(args.r), parse_range(args.g), parse_range(args.k),
        lambdas=lambdas, grid=args.grid,
        routes=tuple(x.strip() for x in args.routes.split(",") if x.strip()),
        precision=args.precision, truncation_extra=args.truncation_extra,
        basis=args.basis, jobs=args.jobs, fmt=args.format, both_sides=args.both_sides,
    )
    tasks = cfg.tasks()
    try:
        records = _run_tasks(cfg, tasks)
    except PrecisionError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    write_records(records, cfg.fmt, out)
    return EXIT_OK if all(rec["ok"] for rec in records) else EXIT_FAIL


def suite_arguments(name, ranks):
    """Keyword arguments restricting a suite to the given ranks, or None if it has no such ranks."""
    if ranks is None:
        return {}
    ranks = set(ranks)
    if name in ("sum_vs_residue", "chamber_independence", "truncation"):
        grid = [t for t in checks.criterion_one_grid() if t[0] in ranks]
        if name == "truncation":
            if not grid and 4 not in ranks:
                return None
            return {"grid": grid, "r4_samples": None if 4 in ranks else []}
        return {"grid": grid} if grid else None
    if name == "basis_independence":
        chosen = tuple(r for r in (2, 3, 4) if r in ranks)
        return {"ranks": chosen} if chosen else None
    if name == "wallcross":
        chosen = tuple(r for r in (3, 4) if r in ranks)
        return {"ranks": chosen} if chosen else None
    if name == "closed_forms":
        return {} if 3 in ranks else None
    if name == "anti_invariance":
        cases = [c for c in [(3, 1), (3, 2), (4, 1)] if c[0] in ranks]
        return {"cases": cases} if cases else None
    if name == "two_point":
        return {} if 2 in ranks else None
    if name == "combinatorics":
        top = max(r for r in ranks)
        return {"max_rank": min(top, 5)} if top >= 2 else None
    return {}


def cmd_crosscheck(args, out):
    names = []
    for item in args.suite or []:
        names.extend(x.strip() for x in item.split(",") if x.strip())
    names = names or list(checks.SUITES)
    for name in names:
        if name not in checks.SUITES:
            raise UsageError("unknown suite %r; choose from %s" % (name, ", ".join(checks.SUITES)))
    ranks = parse_range(args.r) if args.r else None
    summary = []
    all_ok = True
    for name in names:
        kwargs = suite_arguments(name, ranks)
        if kwargs is None:
            summary.append({"suite": name, "skipped": True, "passed": True})
            continue
        if name == "sum_vs_residue" and args.inject_sign_flip:
            kwargs["sign_flip"] = True
        if name == "sum_vs_residue":
            kwargs["precision"] = args.precision
        start = time.perf_counter()
        res = checks.SUITES[name](**kwargs)
        entry = res.as_dict()
        entry["suite"] = name
        entry["timing_s"] = round(time.perf_counter() - start, 3)
        summary.append(entry)
        all_ok = all_ok and res.passed
    if args.format == "json":
        out.write(json.dumps({"passed": all_ok, "suites": summary}, sort_keys=True, indent=2) + "\n")
    else:
        for entry in summary:
            if entry.get("skipped"):
                out.write("%-22s skipped\n" % entry["suite"])
                continue
            out.write("%-22s %s  checked=%d failed=%d\n" % (
                entry["suite"], "PASS" if entry["passed"] else "FAIL", entry["checked"], entry["failed"]))
            for ce in entry["counterexamples"]:
                out.write("    counterexample: %s\n" % json.dumps(ce, sort_keys=True))
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_bases(args, out):
    r = args.r
    if not 2 <= r <= MAX_BASES_RANK:
        raise UsageError("bases needs 2 <= r <= %d" % MAX_BASES_RANK)
    if args.input:
        try:
            with open(args.input) as fh:
                bases = bases_from_json(json.load(fh), r)
        except (OSError, ValueError) as exc:
            raise UsageError("cannot read basis set: %s" % exc)
    elif args.kind == "hamiltonian":
        if not 1 <= args.m <= r:
            raise UsageError("--m must lie in 1..r")
        bases = hamiltonian_basis(args.m, r)
    elif args.kind == "nbc":
        try:
            order = parse_root_order(args.order, r) if args.order else list(combinations(range(1, r + 1), 2))
        except ValueError as exc:
            raise UsageError(str(exc))
        bases = nbc_basis(order, r)
    else:
        raise UsageError("give --kind or --input")
    out.write(json.dumps(bases_to_json(bases)) + "\n")
    if args.verify:
        ok = is_diagonal(bases)
        print("diagonal: %s" % ("yes" if ok else "no"), file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def _env_precision():
    text = os.environ.get("VERLINDE_PRECISION")
    if not text:
        return DEFAULT_PRECISION
    try:
        return int(text)
    except ValueError:
        raise UsageError("VERLINDE_PRECISION must be an integer")


def load_config(path):
    """Flat mapping of flag names (dashes or underscores) to values, from JSON or TOML."""
    try:
        if path.endswith(".toml"):
            try:
                import tomllib as toml
            except ImportError:
                try:
                    import tomli as toml
                except ImportError:
                    raise UsageError("TOML config needs Python 3.11+ or the tomli package; use JSON")
            with open(path, "rb") as fh:
                data = toml.load(fh)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError("cannot read config %s: %s" % (path, exc))
    if not isinstance(data, dict):
        raise UsageError("config must be a flat table")
    out = {}
    for key, value in data.items():
        key = key.replace("-", "_")
        if key == "lambda":
            key = "lam"
            value = [value] if isinstance(value, str) else value
        if isinstance(value, list) and key in ("r", "g", "k", "routes", "suite"):
            value = ",".join(str(v) for v in value)
        out[key] = value
    return out


def build_parser(precision_default):
    parser = argparse.ArgumentParser(prog="verlinde", description="Parabolic Verlinde numbers by residues.")
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("ver", help="compute values by the sum and residue routes")
    ver.add_argument("--config", help="JSON or TOML file of flag defaults")
    ver.add_argument("--r", default="2", help="rank or range, e.g. 2 or 2-3")
    ver.add_argument("--g", default="1", help="genus or range")
    ver.add_argument("--k", default="1", help="level or range")
    ver.add_argument("--lambda", dest="lam", action="append",
                     help="comma-separated integer weight; repeat or separate with ';'")
    ver.add_argument("--grid", action="store_true", help="all admissible weights")
    ver.add_argument("--routes", default="sum,residue")
    ver.add_argument("--precision", type=int, default=precision_default, help="bits for the sum route")
    ver.add_argument("--truncation-extra", type=int, default=0, help="extra series orders")
    ver.add_argument("--basis", default="hamiltonian:1", help="hamiltonian[:m], nbc[:seed] or all")
    ver.add_argument("--both-sides", action="store_true", help="also evaluate the opposite chamber")
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--format", choices=("json", "csv"), default="json")

    cc = sub.add_parser("crosscheck", help="run invariant and cross-route suites")
    cc.add_argument("--config", help="JSON or TOML file of flag defaults")
    cc.add_argument("--suite", action="append", help="suite name(s); default all")
    cc.add_argument("--r", help="restrict to these ranks")
    cc.add_argument("--precision", type=int, default=precision_default)
    cc.add_argument("--format", choices=("json", "text"), default="text")
    cc.add_argument("--inject-sign-flip", action="store_true", help=argparse.SUPPRESS)

    bs = sub.add_parser("bases", help="print or verify diagonal basis sets")
    bs.add_argument("--config", help="JSON or TOML file of flag defaults")
    bs.add_argument("--r", type=int, required=True)
    bs.add_argument("--kind", choices=("hamiltonian", "nbc"))
    bs.add_argument("--m", type=int, default=1)
    bs.add_argument("--order", help='root order such as "13,14,23,24,12,34"')
    bs.add_argument("--verify", action="store_true")
    bs.add_argument("--input", help="JSON file with a hand-supplied basis set")
    return parser, {"ver": ver, "crosscheck": cc, "bases": bs}


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser, subs = build_parser(_env_precision())
        try:
            args = parser.parse_args(argv)
            if getattr(args, "config", None):
                subs[args.command].set_defaults(**load_config(args.config))
                args = parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_OK if exc.code == 0 else EXIT_USAGE
        handler = {"ver": cmd_ver, "crosscheck": cmd_crosscheck, "bases": cmd_bases}[args.command]
        return handler(args, out)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def entry_point():
    sys.exit(main())
