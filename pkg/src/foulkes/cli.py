"""Command-line surface: dimension tables, kernel sweeps, shard emission and
merging, symbolic straightening, and the built-in worked-example check.

Exit codes: 0 success, 1 verify-example mismatch (or per-type errors other
than the ones below), 2 invalid arguments, 3 retry budget exhausted,
4 incomplete or duplicated shard coverage, 5 conjecture witness.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .evaluation import ShardSpec, UNSHARDED, evaluate_psi_image, evaluate_tableau, random_point
from .pipeline import (
    CSV_HEADER,
    ConjectureWitness,
    DuplicateShard,
    IncompleteCoverage,
    KernelReport,
    RetryExhausted,
    checkpoint_merge,
    decompose_kernel,
    kernel_multiplicity,
    shard_entries,
    subseed,
    write_shard_file,
)
from .plethysm import dims_table
from .straightening import TableauSum, apply_psi_symbolic, straighten_filling
from .tableaux import Filling, Partition, SymmetrizedTableau, enumerate_partitions

CHECKPOINT_ENV = "PKW_CHECKPOINT_DIR"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foulkes",
        description="Kernel multiplicities of the symmetric-power map, exactly.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, shards=False):
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--lambda", dest="lambdas", action="append", default=None,
                       metavar="PARTS", help="partition filter, e.g. 14,7,2,2 (repeatable)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default="-", help="output path, - for stdout")
        p.add_argument("--checkpoint", default=None,
                       help=f"checkpoint directory (fallback: ${CHECKPOINT_ENV})")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel workers (default: available cores)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if shards:
            p.add_argument("--shards", type=int, default=1, metavar="N")
            p.add_argument("--shard-id", type=int, default=0, metavar="C")
            p.add_argument("--depth", type=int, default=1, metavar="D",
                           help="tree depth at which subtrees are dealt to shards")

    p_dims = sub.add_parser("dims", help="p and p' for every type of weight a*b")
    add_common(p_dims)

    p_kernel = sub.add_parser("kernel", help="kernel multiplicity reports")
    add_common(p_kernel, shards=True)

    p_merge = sub.add_parser("merge", help="merge shard files into reports")
    add_common(p_merge)

    p_str = sub.add_parser("straighten", help="straighten one filling symbolically")
    p_str.add_argument("filling", help="rows of space-separated entries joined by /")

    p_verify = sub.add_parser("verify-example",
                              help="reproduce the built-in worked example")
    p_verify.add_argument("--points", type=int, default=20)
    p_verify.add_argument("--seed", type=int, default=1)
    p_verify.add_argument("--corrupt-sign", action="store_true",
                          help=argparse.SUPPRESS)  # negative-control test hook
    return parser


def _checkpoint_dir(args) -> Path | None:
    path = args.checkpoint or os.environ.get(CHECKPOINT_ENV)
    return Path(path) if path else None


def _workers(args) -> int:
    if args.workers is not None:
        if args.workers < 1:
            raise SystemExit(2)
        return args.workers
    return os.cpu_count() or 1


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def _write_lines(args, lines) -> None:
    fh, close = _open_out(args.out)
    try:
        for line in lines:
            fh.write(line + "\n")
    finally:
        if close:
            fh.close()


def _lambda_filter(args) -> list[Partition] | None:
    if not args.lambdas:
        return None
    return [Partition.parse(s) for s in args.lambdas]


def _validate_ab(args) -> None:
    if args.a < 1 or args.b < 1:
        raise SystemExit(2)


def cmd_dims(args) -> int:
    _validate_ab(args)
    wanted = _lambda_filter(args)
    lines = []
    for lam, p, p_prime in dims_table(args.a, args.b):
        if wanted is not None and lam not in wanted:
            continue
        if args.format == "csv":
            lines.append(f"{lam},{p},{p_prime}")
        else:
            lines.append(json.dumps(
                {"lambda": str(lam), "p": p, "p_prime": p_prime},
                sort_keys=True, separators=(",", ":")))
    if args.format == "csv":
        lines.insert(0, "lambda,p,p_prime")
    _write_lines(args, lines)
    return 0


def _write_manifest(ckpt: Path, args, shard: ShardSpec | None) -> None:
    ckpt.mkdir(parents=True, exist_ok=True)
    manifest = {
        "version": __version__,
        "command": args.command,
        "a": args.a,
        "b": args.b,
        "seed": args.seed,
        "lambdas": args.lambdas,
        "shards": None if shard is None else
            {"D": shard.depth, "N": shard.count, "C": shard.index},
        "written_at": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    name = "run_manifest.json" if shard is None else \
        f"run_manifest_shard_{shard.index}_of_{shard.count}.json"
    (ckpt / name).write_text(json.dumps(manifest, indent=2) + "\n")


def _report_lines(args, reports: list[KernelReport]) -> list[str]:
    if args.format == "csv":
        return [CSV_HEADER] + [r.csv_row() for r in reports]
    return [r.to_json_line() for r in reports]


def _load_resume(ckpt: Path | None, a: int, b: int, seed: int) -> dict[Partition, KernelReport]:
    done: dict[Partition, KernelReport] = {}
    if ckpt is None:
        return done
    path = ckpt / f"{a}x{b}" / "reports.jsonl"
    if not path.exists():
        return done
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        report = KernelReport.from_json_line(line)
        if (report.a, report.b, report.seed) == (a, b, seed):
            done[report.lam] = report
    return done


def _save_resume(ckpt: Path | None, a: int, b: int, reports: list[KernelReport]) -> None:
    if ckpt is None:
        return
    dir_ = ckpt / f"{a}x{b}"
    dir_.mkdir(parents=True, exist_ok=True)
    with open(dir_ / "reports.jsonl", "w") as fh:
        for r in reports:
            fh.write(r.to_json_line() + "\n")


def cmd_kernel(args) -> int:
    _validate_ab(args)
    ckpt = _checkpoint_dir(args)
    wanted = _lambda_filter(args)
    workers = _workers(args)

    if args.shards > 1:
        if not 0 <= args.shard_id < args.shards:
            raise SystemExit(2)
        if ckpt is None:
            print("kernel: --shards needs a checkpoint directory", file=sys.stderr)
            raise SystemExit(2)
        shard = ShardSpec(args.depth, args.shards, args.shard_id)
        _write_manifest(ckpt, args, shard)
        lams = wanted if wanted is not None else enumerate_partitions(args.a * args.b, args.a)
        for lam in lams:
            header, rows = shard_entries(args.a, args.b, lam, args.seed, shard)
            dir_ = ckpt / f"{args.a}x{args.b}" / str(lam)
            dir_.mkdir(parents=True, exist_ok=True)
            write_shard_file(
                dir_ / f"shard-{shard.index}-of-{shard.count}.jsonl", header, rows)
        return 0

    if ckpt is not None:
        _write_manifest(ckpt, args, None)
    done = _load_resume(ckpt, args.a, args.b, args.seed)
    filter_for_run = wanted
    outcomes = []
    to_compute = [
        lam for lam in enumerate_partitions(args.a * args.b, args.a)
        if (filter_for_run is None or lam in filter_for_run) and lam not in done
    ]
    if to_compute:
        outcomes = decompose_kernel(args.a, args.b, to_compute, args.seed, workers=workers)
    by_lambda = dict(done)
    exit_code = 0
    for outcome in outcomes:
        if outcome.report is not None:
            by_lambda[outcome.lam] = outcome.report
        else:
            print(f"kernel: {outcome.lam}: {outcome.error}", file=sys.stderr)
            if outcome.error.startswith("RetryExhausted"):
                exit_code = max(exit_code, 3)
            elif outcome.error.startswith("ConjectureWitness"):
                exit_code = max(exit_code, 5)
            else:
                exit_code = max(exit_code, 1)
    reports = [
        by_lambda[lam]
        for lam in enumerate_partitions(args.a * args.b, args.a)
        if lam in by_lambda and (filter_for_run is None or lam in filter_for_run)
    ]
    _save_resume(ckpt, args.a, args.b, reports)
    _write_lines(args, _report_lines(args, reports))
    return exit_code


def cmd_merge(args) -> int:
    _validate_ab(args)
    ckpt = _checkpoint_dir(args)
    if ckpt is None:
        print("merge: needs a checkpoint directory", file=sys.stderr)
        raise SystemExit(2)
    base = ckpt / f"{args.a}x{args.b}"
    wanted = _lambda_filter(args)
    lams = wanted if wanted is not None else [
        lam for lam in enumerate_partitions(args.a * args.b, args.a)
        if (base / str(lam)).is_dir()
    ]
    reports = []
    for lam in lams:
        files = sorted((base / str(lam)).glob("shard-*-of-*.jsonl"))
        if not files:
            print(f"merge: no shard files for {lam}", file=sys.stderr)
            return 4
        reports.append(checkpoint_merge(files))
    _write_lines(args, _report_lines(args, reports))
    return 0


def cmd_straighten(args) -> int:
    filling = Filling.parse(args.filling)
    result = straighten_filling(filling)
    if result.is_zero():
        print("0")
        return 0
    for t, c in result.items():
        print(f"{c} * {t}")
    return 0


def cmd_verify_example(args) -> int:
    f = SymmetrizedTableau.parse_letters("AACC/BB")  # a=3, b=2, shape (4,2)
    standard = Filling.parse("1 1 1 2/2 2")  # content 2x3 on the target side
    coeff = -4 if not args.corrupt_sign else 4

    symbolic = apply_psi_symbolic(f)
    sym_ok = symbolic == TableauSum({standard: coeff})
    print(f"symbolic: Psi(AACC/BB) = {symbolic!r}; "
          f"expected {coeff} * ({standard}) -> {'OK' if sym_ok else 'MISMATCH'}")

    agree = 0
    for k in range(args.points):
        v = random_point(n=2, m=2, power=3, seed=subseed(args.seed, "verify", k))
        lhs = evaluate_psi_image(f, v)
        rhs = coeff * evaluate_tableau(standard, v)
        agree += lhs == rhs
    num_ok = agree == args.points
    print(f"numeric: {agree}/{args.points} random points agree "
          f"-> {'OK' if num_ok else 'MISMATCH'}")
    return 0 if (sym_ok and num_ok) else 1


_COMMANDS = {
    "dims": cmd_dims,
    "kernel": cmd_kernel,
    "merge": cmd_merge,
    "straighten": cmd_straighten,
    "verify-example": cmd_verify_example,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except RetryExhausted as exc:
        print(f"foulkes: {exc}", file=sys.stderr)
        return 3
    except (IncompleteCoverage, DuplicateShard) as exc:
        print(f"foulkes: {exc}", file=sys.stderr)
        return 4
    except ConjectureWitness as exc:
        print(f"foulkes: {exc}", file=sys.stderr)
        return 5
    except ValueError as exc:
        print(f"foulkes: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
