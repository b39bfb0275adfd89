"""Command line front end: ``aperycheck {verify,identities,seq,cache}``.

Exit codes: 0 all checks pass (skips allowed), 1 at least one failure,
2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from . import cache as bcache
from .congruences import (
    SUITES,
    check_ladder,
    required_bernoulli_index,
    run_c01_grid,
    run_divisibility_c07,
    run_kummer_grid,
    run_suite,
)
from .exact_arith import is_prime, primes_in_range
from .identities import FAMILIES, sweep
from .report import Report
from .sequences import apery, bernoulli_table, harmonic, mhs

log = logging.getLogger("aperycheck")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    suite_id: str
    primes: List[int]
    parallelism: int = 1
    output_format: str = "json-lines"
    output_path: Optional[str] = None
    cache_path: Optional[str] = None
    include_negative_controls: bool = False
    timing: bool = True
    c01_x: tuple = (-20, 20)
    kummer_k: int = 3
    c07_n_max: int = 300

    def __post_init__(self):
        if self.parallelism < 1:
            raise UsageError("parallelism must be >= 1")
        if self.suite_id not in SUITES and self.suite_id != "grids":
            raise UsageError(f"unknown suite {self.suite_id!r}")
        if not self.primes:
            raise UsageError("prime range contains no primes")


def parse_int_range(text: str) -> tuple:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"expected LO..HI, got {text!r}")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if lo_i > hi_i:
        raise UsageError(f"empty range {text!r}")
    return lo_i, hi_i


def parse_primes(text: str) -> List[int]:
    """``LO..HI`` (inclusive) or a comma separated list of primes."""
    if ".." in text:
        lo, hi = parse_int_range(text)
        return list(primes_in_range(lo, hi))
    try:
        ps = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None
    bad = [n for n in ps if not is_prime(n)]
    if bad:
        raise UsageError(f"not prime: {bad}")
    return ps


def _table_for(cfg: RunConfig):
    need = required_bernoulli_index(max(cfg.primes), cfg.kummer_k if cfg.suite_id in ("all", "grids") else 0)
    if cfg.cache_path:
        return bcache.load_or_build_cache(Path(cfg.cache_path), need)
    return bernoulli_table(need)


def execute(cfg: RunConfig) -> Report:
    t0 = time.perf_counter()
    table = _table_for(cfg)
    results = []
    if cfg.suite_id != "grids":
        results += run_suite(cfg.suite_id, cfg.primes, cfg.parallelism, table, cfg.include_negative_controls)
        bad = check_ladder(results)
        if bad:
            raise RuntimeError(f"consistency ladder C06 => C05 => C02 broken at p = {bad}")
    if cfg.suite_id in ("all", "grids"):
        odd = [p for p in cfg.primes if p > 2]
        if odd:
            results += run_c01_grid(odd, *cfg.c01_x)
        results += run_kummer_grid(cfg.primes, cfg.kummer_k, table)
        results += run_divisibility_c07(cfg.c07_n_max)
    results.sort(key=lambda r: r.sort_key())
    config = {k: v for k, v in asdict(cfg).items() if k not in ("primes", "output_path", "cache_path")}
    config["primes"] = [min(cfg.primes), max(cfg.primes), len(cfg.primes)]
    return Report(config, results, time.perf_counter() - t0)


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_verify(args) -> int:
    if args.output:
        out = Path(args.output)
        if out.is_dir() or not out.parent.exists():
            raise UsageError(f"cannot write output to {out}")
    cfg = RunConfig(
        suite_id=args.suite,
        primes=parse_primes(args.primes),
        parallelism=args.parallelism,
        output_format=args.format,
        output_path=args.output,
        cache_path=args.cache,
        include_negative_controls=args.negative_controls,
        timing=not args.no_timing,
        c01_x=parse_int_range(args.c01_x),
        kummer_k=args.kummer_k,
        c07_n_max=args.c07_n_max,
    )
    report = execute(cfg)
    if cfg.output_format == "json-lines":
        text = "".join(r.to_json(cfg.timing) + "\n" for r in report.results)
    else:
        text = report.table() + "\n"
    _emit(text, cfg.output_path)
    if args.summary:
        _emit(json.dumps(report.to_dict(cfg.timing), indent=2) + "\n", args.summary)
    tot = report.counts()
    print(
        f"{cfg.suite_id}: {tot['pass']} pass, {tot['fail']} fail, {tot['skip']} skip, "
        f"{tot['expected-fail']} expected-fail ({report.elapsed_s:.2f}s)",
        file=sys.stderr,
    )
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_identities(args) -> int:
    families = [args.family] if args.family else list(FAMILIES)
    status = EXIT_OK
    for fam in families:
        reports = sweep(fam, args.trials, args.seed)
        n_fail = sum(not r.passed for r in reports)
        line = f"{fam:<16} {len(reports) - n_fail}/{len(reports)} pass"
        if args.mutants:
            checker, _, small = FAMILIES[fam]
            caught = any(not checker(*inst, mutant=True).passed for inst in small)
            line += f"; mutant {'caught' if caught else 'NOT caught'}"
            if not caught:
                status = EXIT_FAIL
        print(line)
        for r in reports:
            if not r.passed:
                print(f"  FAIL {fam}{r.instance}: lhs={r.lhs} rhs={r.rhs}")
        if n_fail:
            status = EXIT_FAIL
    return status


def cmd_seq(args) -> int:
    if args.kind == "apery":
        for n in range(args.n + 1):
            print(n, apery(n))
    elif args.kind == "bernoulli":
        for n, b in enumerate(bernoulli_table(args.n).values):
            print(n, b)
    elif args.kind == "harmonic":
        print(harmonic(args.n, args.order))
    elif args.kind == "mhs":
        if not args.index:
            raise UsageError("mhs needs --index, e.g. --index 2,-1")
        try:
            s = tuple(int(t) for t in args.index.split(","))
            print(mhs(s, args.n))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return EXIT_OK


def cmd_cache(args) -> int:
    path = Path(args.path) if args.path else bcache.default_cache_path()
    if args.action == "build":
        if args.n is None:
            raise UsageError("cache build needs N")
        table = bcache.load_or_build_cache(path, args.n)
        print(f"{path}: B_0..B_{table.max_index}")
    else:
        table = bcache.load(path)
        if table is None:
            print(f"{path}: no valid cache")
            return EXIT_FAIL
        print(f"{path}: B_0..B_{table.max_index} (validated)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aperycheck", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run congruence suites over a prime range")
    v.add_argument("--suite", default="all", help=f"one of {sorted(SUITES) + ['grids']}")
    v.add_argument("--primes", default="7..97", help="LO..HI inclusive, or a comma list")
    v.add_argument("-j", "--parallelism", type=int, default=1)
    v.add_argument("--format", choices=("json-lines", "table"), default="json-lines")
    v.add_argument("--output", help="write results here instead of stdout")
    v.add_argument("--summary", help="write the JSON report here")
    v.add_argument("--cache", help="Bernoulli cache file (default: $APERY_CACHE if set)")
    v.add_argument("--negative-controls", action="store_true")
    v.add_argument("--no-timing", action="store_true", help="omit elapsed times for reproducible output")
    v.add_argument("--c01-x", default="-20..20", help="x range of the C01 grid")
    v.add_argument("--kummer-k", type=int, default=3)
    v.add_argument("--c07-n-max", type=int, default=300)
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("identities", help="randomized exact identity sweeps")
    i.add_argument("--trials", type=int, default=500)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--family", choices=sorted(FAMILIES))
    i.add_argument("--mutants", action="store_true", help="also confirm each mutated checker fails")
    i.set_defaults(func=cmd_identities)

    s = sub.add_parser("seq", help="print sequence values")
    s.add_argument("kind", choices=("apery", "bernoulli", "harmonic", "mhs"))
    s.add_argument("n", type=int)
    s.add_argument("--order", type=int, default=1, help="harmonic order m")
    s.add_argument("--index", help="MHS index, comma separated, e.g. 2,-1")
    s.set_defaults(func=cmd_seq)

    c = sub.add_parser("cache", help="build or inspect the Bernoulli cache")
    c.add_argument("action", choices=("build", "show"))
    c.add_argument("n", type=int, nargs="?")
    c.add_argument("--path")
    c.set_defaults(func=cmd_cache)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "verify" and args.cache is None:
        args.cache = os.environ.get(bcache.ENV_VAR) or None
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"aperycheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
