"""Command-line entry point: ``kcolour <command> ...``.

Exit status: 0 success, 1 a checked property failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import asymptotics, bounds, core, logconcavity, majorization, stats

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

CACHE_ENV = "KCOLOUR_CACHE_DIR"
MANIFEST = "manifest.json"


class UsageError(Exception):
    pass


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


# -- cache directory ---------------------------------------------------------


def cache_dir(arg: str | None) -> Path:
    return Path(arg or os.environ.get(CACHE_ENV) or "pkcache")


def cache_name(k: int, n_max: int) -> str:
    return f"p{k}_n{n_max}.pkcache"


def load_manifest(directory: Path) -> dict:
    path = directory / MANIFEST
    if not path.exists():
        return {"entries": []}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _save_manifest(directory: Path, manifest: dict) -> None:
    tmp = directory / (MANIFEST + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, directory / MANIFEST)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def best_cached(directory: Path, k: int) -> core.CountTable | None:
    """Largest intact cached table for k, if any."""
    entries = [e for e in load_manifest(directory)["entries"] if e["k"] == k]
    for e in sorted(entries, key=lambda e: -e["n_max"]):
        path = directory / e["file"]
        if path.exists() and _sha256(path) == e["sha256"]:
            try:
                return core.read_cache(path)
            except core.CacheFormatError:
                continue
    return None


def store_table(directory: Path, table: core.CountTable) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = core.write_cache(table, directory / cache_name(table.k, table.n_max))
    manifest = load_manifest(directory)
    entries = [
        e for e in manifest["entries"] if (e["k"], e["n_max"]) != (table.k, table.n_max)
    ]
    entries.append(
        {"k": table.k, "n_max": table.n_max, "file": path.name, "sha256": _sha256(path)}
    )
    manifest["entries"] = sorted(entries, key=lambda e: (e["k"], e["n_max"]))
    _save_manifest(directory, manifest)
    return path


# -- commands ----------------------------------------------------------------


def cmd_table(args) -> int:
    if args.k < 1 or args.nmax < 0:
        raise UsageError("need --k >= 1 and --nmax >= 0")
    directory = cache_dir(args.cache_dir)
    try:
        cached = best_cached(directory, args.k) if directory.exists() else None
        if cached is None:
            table = core.partition_count_table(args.k, args.nmax)
            source = "computed"
        elif cached.n_max >= args.nmax:
            table = cached.prefix(args.nmax)
            source = f"loaded n_max={cached.n_max}"
        else:
            table = cached.extend(args.nmax)
            source = f"extended from n_max={cached.n_max}"
        path = store_table(directory, table)
    except OSError as exc:
        sys.stderr.write(f"kcolour: cannot write cache in {directory}: {exc}\n")
        return EXIT_USAGE
    last = table[table.n_max]
    _out(f"k={args.k} n_max={table.n_max} ({source}) p_k(n_max) has {len(str(last))} digits")
    _out(f"wrote {path}")
    return EXIT_OK


def _config(args) -> logconcavity.CertifyConfig:
    if getattr(args, "full_scale", False):
        return logconcavity.CertifyConfig.full_scale()
    config = logconcavity.CertifyConfig.desk()
    if getattr(args, "exact_limit", None) is not None:
        config.default_exact_limit = args.exact_limit
    return config


def cmd_logcheck(args) -> int:
    if args.k < 1 or args.n_from < 1 or args.n_to < args.n_from:
        raise UsageError("need --k >= 1 and 1 <= --from <= --to")
    report = logconcavity.verify_range(
        args.k, args.n_from, args.n_to, args.method, _config(args), args.workers
    )
    _out(
        f"k={args.k} n={args.n_from}..{args.n_to} method={args.method} checked={report.checked} "
        f"exceptions={len(report.exceptions)} uncertified={len(report.uncertified)} "
        + " ".join(f"{m}={c}" for m, c in sorted(report.by_method.items()))
    )
    _out("k,n,ell,kind")
    for rec in report.exceptions:
        _out(f"{rec.k},{rec.n},{'' if rec.ell is None else rec.ell},{rec.kind}")
    if report.uncertified:
        u = report.uncertified
        _out(f"uncertified: {len(u)} indices in [{u[0]}, {u[-1]}]")
    if args.k < 3:
        return EXIT_OK
    real = [e for e in report.exceptions if (e.k, e.n) != (3, 1)]
    return EXIT_VIOLATION if real or report.uncertified else EXIT_OK


def cmd_cross(args) -> int:
    try:
        res = logconcavity.verify_cross_inequality(args.k, args.ell, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _out(res.verdict.value)
    _out(f"p_k(l+1)p_k(n-1) = {res.left}")
    _out(f"p_k(l)p_k(n) = {res.right}")
    asserted = args.k >= 4 or (args.k in (2, 3) and args.ell >= 1)
    if asserted and res.verdict is not logconcavity.Verdict.STRICT:
        return EXIT_VIOLATION
    return EXIT_OK


def _partition(text: str) -> majorization.PartitionVec:
    try:
        return majorization.PartitionVec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_majorize(args) -> int:
    a, b = _partition(args.a), _partition(args.b)
    if (a.n, a.r) != (b.n, b.r):
        raise UsageError(f"partitions differ in total or length: {a} vs {b}")
    rel = majorization.majorizes(b, a)
    pa = majorization.pk_product(args.k, a)
    pb = majorization.pk_product(args.k, b)
    sign = "<" if pa < pb else "=" if pa == pb else ">"
    if rel is not majorization.Relation.STRICTLY_MAJORIZES:
        _out(f"{rel.value}; {pa} {sign} {pb}; N/A")
        return EXIT_OK
    res = majorization.verify_majorization_inequality(args.k, a, b)
    if not res.asserted:
        _out(f"{rel.value}; {pa} {sign} {pb}; REPORT")
        return EXIT_OK
    _out(f"{rel.value}; {pa} {sign} {pb}; {'PASS' if res.passed else 'FAIL'}")
    return EXIT_OK if res.passed else EXIT_VIOLATION


def cmd_chain(args) -> int:
    a, b = _partition(args.a), _partition(args.b)
    if (a.n, a.r) != (b.n, b.r):
        raise UsageError(f"partitions differ in total or length: {a} vs {b}")
    try:
        steps = majorization.rh_chain(a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _out("step,ell,j,result")
    cur = a
    for i, s in enumerate(steps, 1):
        cur = majorization.robin_hood(cur, s)
        _out(f"{i},{s.ell},{s.j},{cur}")
    return EXIT_OK if cur == b else EXIT_VIOLATION


def cmd_stats(args) -> int:
    orientation = stats.PairOrientation(args.orientation)
    if args.published:
        keys = [(n, r, k) for n, r, k, *_ in stats.PUBLISHED_TABLE]
    else:
        if args.n is None or args.r is None or args.k is None:
            raise UsageError("stats needs --n, --r and --k (or --published)")
        if not 1 <= args.r <= args.n:
            raise UsageError("need 1 <= r <= n")
        keys = [(args.n, args.r, args.k)]
    records = [stats.s_sets(k, n, r, orientation) for n, r, k in keys]
    if args.format == "markdown":
        _out(stats.markdown_table(records))
    else:
        if args.header:
            _out(stats.CSV_HEADER)
        for rec in records:
            _out(rec.csv_row())
    return EXIT_OK


def parse_schedule(text: str, k: int) -> bounds.DSchedule:
    if text == "exact":
        return bounds.DSchedule.exact()
    if text == "d4":
        return bounds.DSchedule.d4()
    if text == "d5":
        return bounds.DSchedule.d5()
    if text == "desk":
        try:
            return bounds.desk_schedule(k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if text.startswith("const:"):
        try:
            c = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad schedule {text!r}") from None
        if c < 1:
            raise UsageError("const schedule needs a positive length")
        return bounds.DSchedule.constant(c)
    raise UsageError(f"unknown schedule {text!r}; use exact, d4, d5, desk or const:C")


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_bounds(args) -> int:
    if args.k < 1 or args.nmax < 1:
        raise UsageError("need --k >= 1 and --nmax >= 1")
    schedule = parse_schedule(args.schedule, args.k)
    bt = bounds.bound_tables(args.k, schedule, args.nmax)
    table = core.get_table(args.k, args.nmax)
    report = bounds.check_sandwich(args.k, schedule, args.nmax, table, bt)
    bad = {n for n, _ in report.violations}
    nonstrict = set(report.strictness_failures)
    _out("n,lower,exact,upper,verdict")
    for n in range(1, args.nmax + 1):
        verdict = "violation" if n in bad else "nonstrict" if n in nonstrict else "ok"
        _out(f"{n},{_frac(bt.lower[n])},{table[n]},{_frac(bt.upper[n])},{verdict}")
    sys.stderr.write(
        f"schedule={schedule.label} violations={len(report.violations)} "
        f"nonstrict={len(report.strictness_failures)} truncating={len(report.truncating)} "
        f"all_j_truncating={report.all_j_hypothesis}\n"
    )
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _alpha(text: str):
    try:
        a = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad alpha {text!r}") from None
    return int(a) if a.denominator == 1 else a


def cmd_asym(args) -> int:
    app = asymptotics.applicability(args.alpha, args.n, args.ell)
    log_main = ratio = ""
    status = EXIT_OK
    if app:
        log_main = repr(asymptotics.main_term_log(args.alpha, args.n, args.ell))
        if isinstance(args.alpha, int):
            r = asymptotics.ratio_check(args.alpha, args.n, args.ell)
            ratio = repr(r)
            if not asymptotics.in_error_interval(r):
                status = EXIT_VIOLATION
    _out("alpha,n,ell,applicable,log_main_term,ratio")
    _out(f"{args.alpha},{args.n},{args.ell},{str(bool(app)).lower()},{log_main},{ratio}")
    return status


def cmd_scan_r(args) -> int:
    if args.k < 3 or args.r < 2:
        raise UsageError("need --k >= 3 and --r >= 2")
    scan = stats.find_R(args.r, args.k, range(max(args.nmin, args.r), args.nmax + 1))
    _out("n,R")
    for n, R in sorted(scan.per_n.items()):
        _out(f"{n},{'' if R is None else R}")
    _out(f"# aggregate R estimate for r={args.r}, k={args.k}: {scan.aggregate}")
    return EXIT_OK


def cmd_scan_eq(args) -> int:
    found = stats.scan_s_equal(range(args.kmin, args.kmax + 1), args.nmax, args.rmax)
    _out(stats.CSV_HEADER)
    for rec in found:
        _out(rec.csv_row())
    return EXIT_VIOLATION if any(rec.k >= 4 for rec in found) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kcolour", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("table", help="compute or extend a cached p_k table")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--cache-dir", help=f"default: ${CACHE_ENV} or ./pkcache")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("logcheck", help="strict log-concavity over a range")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--from", dest="n_from", type=int, required=True)
    s.add_argument("--to", dest="n_to", type=int, required=True)
    s.add_argument("--method", choices=["auto", "exact", "bounds"], default="auto")
    s.add_argument("--exact-limit", type=int, help="exact-table limit for --method auto")
    s.add_argument("--full-scale", action="store_true", help="use the full published ranges")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_logcheck)

    s = sub.add_parser("cross", help="p_k(l+1)p_k(n-1) vs p_k(l)p_k(n)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_cross)

    s = sub.add_parser("majorize", help="check p_k(b) > p_k(a) for b majorizing a")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--a", required=True, help="ascending parts, e.g. 1,3")
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_majorize)

    s = sub.add_parser("chain", help="Robin Hood steps from a to b")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_chain)

    s = sub.add_parser("stats", help="pair classification counts")
    s.add_argument("--n", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--published", action="store_true", help="all rows of the published table")
    s.add_argument("--format", choices=["csv", "markdown"], default="csv")
    s.add_argument("--header", action="store_true")
    s.add_argument(
        "--orientation", choices=[o.value for o in stats.PairOrientation], default="lex"
    )
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("bounds", help="sandwich bounds against exact values")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--schedule", default="desk", help="exact | d4 | d5 | desk | const:C")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("asym", help="asymptotic main term and exact ratio")
    s.add_argument("--alpha", type=_alpha, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.set_defaults(func=cmd_asym)

    s = sub.add_parser("scanR", help="minimal partial-majorization depth per n")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--nmin", type=int, default=1)
    s.set_defaults(func=cmd_scan_r)

    s = sub.add_parser("scan-eq", help="list (k, n, r) with tied products")
    s.add_argument("--kmin", type=int, default=4)
    s.add_argument("--kmax", type=int, default=10)
    s.add_argument("--nmax", type=int, default=30)
    s.add_argument("--rmax", type=int, default=4)
    s.set_defaults(func=cmd_scan_eq)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"kcolour {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
