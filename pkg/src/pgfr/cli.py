"""Command-line entry point: classify, certify, sweep and curve subcommands.

Exit codes: 0 success, 1 certifier/classifier disagreement or internal
inconsistency, 2 usage error. Sweep parallelism is bounded by PGFR_THREADS.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from .certify import (
    certify_double_star_pair,
    certify_path,
    classify_double_star,
    classify_path,
    double_star_candidates,
    path_agrees,
    pendant_pair_at,
    phenomenon_agrees,
)
from .errors import InternalInconsistency, PGFRError
from .dynamics import curve_rows
from .graphs import double_star_labels, laplacian, make_double_star
from .spectral import eigendecompose, path_spectrum

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2
CURVE_HEADER = "t,at_a,cross,leakage"


class UsageError(Exception):
    pass


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.15g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, floats at 15 significant digits."""
    return json.dumps(_round_floats(obj), sort_keys=True)


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.family} needs {', '.join(missing)}")


# -- classify / certify ------------------------------------------------------


def cmd_classify(args) -> int:
    if args.family == "path":
        _require(args, "n", "a")
        verdict = classify_path(args.n, args.a)
        out = {"decision": verdict}
        if verdict == "yes":
            out["partner"] = args.n + 1 - args.a
    else:
        _require(args, "m", "n")
        out = classify_double_star(args.m, args.n).to_json()
    print(dumps(out))
    return EXIT_OK


def _double_star_pair(args) -> tuple[int, int]:
    if args.a is not None and args.b is not None:
        return args.a, args.b
    lab = double_star_labels(args.m, args.n)
    tag = args.pair or "centers"
    if tag == "centers":
        return lab["second_center"], lab["first_center"]
    if tag == "p4-extremal":
        if args.m != 1 or args.n != 1:
            raise UsageError("p4-extremal needs m = n = 1")
        return lab["second_pendants"][0], lab["first_pendants"][0]
    # pendant-pair: prefer the center that has exactly two pendants
    side = "second" if args.n == 2 or args.m < 2 else "first"
    return pendant_pair_at(args.m, args.n, side)


def cmd_certify(args) -> int:
    if args.family == "path":
        _require(args, "n", "a")
        cert = certify_path(args.n, args.a, args.b)
        pair = (args.a, args.b if args.b is not None else args.n + 1 - args.a)
    else:
        _require(args, "m", "n")
        pair = _double_star_pair(args)
        cert = certify_double_star_pair(args.m, args.n, pair)
    out = cert.to_json()
    out["pair"] = list(pair)
    if args.dump_lattice:
        out["lattice"] = {"indices": list(cert.support_indices), "rank": len(out["basis"])}
    print(dumps(out))
    return EXIT_OK


# -- sweep -------------------------------------------------------------------


def path_record(job) -> dict:
    n, a = job
    cert = certify_path(n, a)
    verdict = classify_path(n, a)
    return {
        "family": "path",
        "n": n,
        "a": a,
        "b": n + 1 - a,
        "decision": cert.decision,
        "gcd": cert.gcd_value,
        "witness": list(cert.witness) if cert.witness is not None else None,
        "classifier": verdict,
        "agrees_with_classifier": path_agrees(verdict, cert.decision),
    }


def double_star_record(job) -> dict:
    m, n, tag, pair = job
    cert = certify_double_star_pair(m, n, pair)
    claims = {frozenset(c.pair): c.phenomenon for c in classify_double_star(m, n).claims}
    phenomenon = claims.get(frozenset(pair), "none")
    return {
        "family": "double-star",
        "m": m,
        "n": n,
        "pair_tag": tag,
        "pair": list(pair),
        "decision": cert.decision,
        "gcd": cert.gcd_value,
        "witness": list(cert.witness) if cert.witness is not None else None,
        "classifier": phenomenon,
        "agrees_with_classifier": phenomenon_agrees(phenomenon, cert.decision),
    }


def sweep_jobs(family: str, limit: int):
    if family == "path":
        return path_record, [(n, a) for n in range(2, limit + 1) for a in range(1, n + 1) if 2 * a < n + 1]
    jobs = [
        (m, n, tag, pair)
        for m in range(1, limit + 1)
        for n in range(1, limit + 1)
        for tag, pair in double_star_candidates(m, n)
    ]
    return double_star_record, jobs


def worker_count() -> int:
    raw = os.environ.get("PGFR_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"PGFR_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise UsageError(f"PGFR_THREADS must be a positive integer, got {raw!r}")
    return value


def run_sweep(family: str, limit: int, out, workers: int = 1) -> tuple[Counter, int]:
    """Write one JSON record per line in instance order; stop after the first disagreement."""
    fn, jobs = sweep_jobs(family, limit)
    counts: Counter = Counter()
    disagreements = 0
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(fn, jobs, chunksize=max(1, len(jobs) // (8 * workers)))
            disagreements = _write_records(results, out, counts)
    else:
        disagreements = _write_records(map(fn, jobs), out, counts)
    return counts, disagreements


def _write_records(records, out, counts) -> int:
    for rec in records:
        out.write(dumps(rec) + "\n")
        counts[rec["decision"]] += 1
        if not rec["agrees_with_classifier"]:
            return 1
    return 0


def cmd_sweep(args) -> int:
    if args.family == "path":
        _require(args, "n_max")
        limit = args.n_max
    else:
        _require(args, "max")
        limit = args.max
    workers = worker_count()
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        counts, bad = run_sweep(args.family, limit, fh, workers)
    total = sum(counts.values())
    summary = ", ".join(f"{k}={counts[k]}" for k in sorted(counts))
    print(f"{args.family} sweep: {total} records ({summary or 'none'}); disagreements: {bad}", file=sys.stderr)
    return EXIT_DISAGREE if bad else EXIT_OK


# -- curve -------------------------------------------------------------------


def cmd_curve(args) -> int:
    if args.family == "path":
        _require(args, "n", "a")
        sd = path_spectrum(args.n)
        b = args.b if args.b is not None else args.n + 1 - args.a
    else:
        _require(args, "m", "n", "a", "b")
        sd = eigendecompose(laplacian(make_double_star(args.m, args.n)))
        b = args.b
    rows = curve_rows(sd, args.a, b, args.t_max, args.points)
    lines = [CURVE_HEADER] + [",".join(f"{x:.15g}" for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgfr", description="Laplacian pretty good fractional revival on paths and double stars")
    sub = ap.add_subparsers(dest="command", required=True)

    def family_args(p):
        p.add_argument("--family", choices=["path", "double-star"], required=True)
        p.add_argument("--n", type=int, help="path order, or second pendant count of a double star")
        p.add_argument("--m", type=int, help="first pendant count of a double star")
        p.add_argument("--a", type=int, help="vertex (1-based)")
        p.add_argument("--b", type=int, help="partner vertex (default: mirror vertex on paths)")

    p = sub.add_parser("classify", help="closed-form classification")
    family_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certify", help="exact certificate from the relation lattice")
    family_args(p)
    p.add_argument("--pair", choices=["centers", "pendant-pair", "p4-extremal"], help="double-star pair tag")
    p.add_argument("--dump-lattice", action="store_true", help="also print lattice column labels and rank")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sweep", help="certify a whole family and cross-check the classifier")
    p.add_argument("--family", choices=["path", "double-star"], required=True)
    p.add_argument("--n-max", type=int, help="largest path order")
    p.add_argument("--max", type=int, help="largest pendant count for double stars")
    p.add_argument("--out", required=True, help="JSONL output file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("curve", help="leakage/cross CSV over a time grid")
    family_args(p)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--out", help="CSV file (default: stdout)")
    p.set_defaults(func=cmd_curve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pgfr: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistency as exc:
        print(f"pgfr: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except PGFRError as exc:
        print(f"pgfr: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
