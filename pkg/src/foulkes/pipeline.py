"""Per-type kernel multiplicities, end to end.

For each partition: compute both multiplicities, build certified bases of
both highest-weight-vector spaces from random semistandard tableaux and
random points, assemble the evaluation matrix of the map, and report
multiplicity = p - rank.  Also owns the shard-file format used to split one
evaluation across many workers and the merge that reassembles it.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .evaluation import (
    ShardSpec,
    UNSHARDED,
    Point,
    build_minor_cache,
    evaluate_psi_image,
    evaluate_tableau,
    random_point,
)
from .intlinalg import IntMatrix, RowBasis, rank
from .plethysm import plethysm_coefficient
from .tableaux import (
    ContentSpec,
    Partition,
    SymmetrizedTableau,
    enumerate_partitions,
    random_semistandard,
)

TABLEAU_DRAWS_PER_DIM = 10
POINT_EPOCHS = 5


class RetryExhausted(RuntimeError):
    """Independent tableaux or usable points could not be found within the
    retry budget; signals a bug or a wrong dimension, never ignored."""


class ConjectureWitness(RuntimeError):
    """p > p' for some type with a <= b, which would disprove the
    multiplicity conjecture; the pipeline refuses to continue silently."""


class IncompleteCoverage(ValueError):
    """Shard files do not cover every (tableau, point, shard) exactly once."""


class DuplicateShard(ValueError):
    """A (tableau, point, shard) cell appears more than once in shard files."""


def subseed(master: int, *labels) -> int:
    """Deterministic sub-seed derived from the master seed and a label path."""
    text = "|".join([str(master), *[str(x) for x in labels]])
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class HwvBasis:
    """Certified basis of one highest-weight-vector space.

    ``eval_matrix`` holds the tableau-at-point values; it is square of size
    ``dim`` and has full rank by construction (rows were accepted only when
    they increased the rank), which is what makes evaluation at these points
    a faithful fingerprint of the space.
    """

    side: str  # "ab" (domain) or "ba" (target)
    lam: Partition
    tableaux: list[SymmetrizedTableau]
    points: list[Point]
    eval_matrix: IntMatrix
    dim: int


def _side_params(side: str, a: int, b: int):
    if side == "ab":
        return ContentSpec(a, b), b, a  # content, point power, forms per point
    if side == "ba":
        return ContentSpec(b, a), a, b
    raise ValueError(f"unknown side {side!r}")


def build_hwv_basis(side: str, a: int, b: int, lam: Partition, seed: int) -> HwvBasis | None:
    """Draw random tableaux and points until dim independent tableaux are
    certified; None when the space is zero-dimensional.

    Fresh tableaux are drawn up to 10*dim times per point set; after that the
    points themselves are redrawn, up to 5 point sets, before giving up.
    """
    if side == "ab":
        dim = plethysm_coefficient(a, b, lam)
    else:
        dim = plethysm_coefficient(b, a, lam)
    if dim == 0:
        return None
    content, power, m = _side_params(side, a, b)
    n = lam.rows
    lengths = lam.column_lengths()
    for epoch in range(POINT_EPOCHS):
        points = [
            random_point(n, m, power, subseed(seed, "point", side, lam, epoch, j))
            for j in range(dim)
        ]
        caches = [build_minor_cache(pt, lengths) for pt in points]
        basis = RowBasis(dim)
        tableaux: list[SymmetrizedTableau] = []
        rows: list[list[int]] = []
        for draw in range(TABLEAU_DRAWS_PER_DIM * dim):
            t = random_semistandard(
                lam, content, subseed(seed, "tableau", side, lam, epoch, draw)
            )
            if t is None:
                raise RetryExhausted(
                    f"no semistandard filling of {lam} with content "
                    f"{content.symbols}x{content.repeats} although dim={dim}"
                )
            f = SymmetrizedTableau(t)
            row = [evaluate_tableau(f, pt, cache) for pt, cache in zip(points, caches)]
            if basis.try_add_row(row):
                tableaux.append(f)
                rows.append(row)
                if len(tableaux) == dim:
                    return HwvBasis(side, lam, tableaux, points, IntMatrix.from_rows(rows), dim)
    raise RetryExhausted(
        f"could not certify {dim} independent tableaux for {lam} (side {side}) "
        f"after {POINT_EPOCHS} point sets"
    )


@dataclass
class KernelReport:
    """Result of one per-type run, including the data needed to replay it."""

    a: int
    b: int
    lam: Partition
    p: int
    p_prime: int
    rank: int
    kernel_mult: int
    seed: int
    points_domain: list[Point] = field(default_factory=list)
    points_target: list[Point] = field(default_factory=list)
    elapsed: float | None = None  # wall time; never part of the canonical bytes

    def canonical_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "lambda": str(self.lam),
            "p": self.p,
            "p_prime": self.p_prime,
            "rank": self.rank,
            "kernel_mult": self.kernel_mult,
            "seed": self.seed,
            "points": {
                "domain": [pt.to_dict() for pt in self.points_domain],
                "target": [pt.to_dict() for pt in self.points_target],
            },
        }

    def to_json_line(self) -> str:
        """Canonical one-line serialization; byte-identical for equal runs."""
        return json.dumps(self.canonical_dict(), sort_keys=True, separators=(",", ":"))

    def csv_row(self) -> str:
        return f"{self.lam},{self.p},{self.p_prime},{self.rank},{self.kernel_mult}"

    @classmethod
    def from_json_line(cls, line: str) -> "KernelReport":
        d = json.loads(line)
        return cls(
            a=d["a"],
            b=d["b"],
            lam=Partition.parse(d["lambda"]),
            p=d["p"],
            p_prime=d["p_prime"],
            rank=d["rank"],
            kernel_mult=d["kernel_mult"],
            seed=d["seed"],
            points_domain=[Point.from_dict(x) for x in d["points"]["domain"]],
            points_target=[Point.from_dict(x) for x in d["points"]["target"]],
        )


CSV_HEADER = "lambda,p,p_prime,rank,kernel_mult"


def _check_conjecture(a: int, b: int, lam: Partition, p: int, p_prime: int) -> None:
    if a <= b and p > p_prime:
        raise ConjectureWitness(
            f"p={p} > p'={p_prime} for lambda={lam} at (a,b)=({a},{b}); "
            "this would disprove the multiplicity conjecture"
        )


def _psi_row(args) -> list[int]:
    tableaux, point, shard = args
    return [evaluate_psi_image(f, point, shard) for f in tableaux]


def kernel_multiplicity(
    a: int,
    b: int,
    lam: Partition,
    seed: int,
    shard: ShardSpec = UNSHARDED,
    workers: int = 1,
) -> KernelReport:
    """Multiplicity of the type ``lam`` in the kernel of the map.

    Builds certified bases on both sides, evaluates the image of every
    domain tableau at every target point, and returns p - rank of that
    matrix.  ``shard`` must cover the whole tree (count 1) for the report to
    be meaningful; partial shard values go through shard files instead.
    """
    if lam.weight != a * b:
        raise ValueError(f"|{lam}| != {a}*{b}")
    started = time.monotonic()
    p = plethysm_coefficient(a, b, lam)
    p_prime = plethysm_coefficient(b, a, lam)
    _check_conjecture(a, b, lam, p, p_prime)
    if p == 0:
        return KernelReport(a, b, lam, p, p_prime, 0, 0, seed,
                            elapsed=time.monotonic() - started)
    domain = build_hwv_basis("ab", a, b, lam, seed)
    if p_prime == 0:
        # the target space is zero: everything is in the kernel
        return KernelReport(
            a, b, lam, p, p_prime, 0, p, seed,
            points_domain=domain.points,
            elapsed=time.monotonic() - started,
        )
    target = build_hwv_basis("ba", a, b, lam, seed)
    tasks = [(domain.tableaux, pt, shard) for pt in target.points]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_psi_row, tasks))
    else:
        rows = [_psi_row(t) for t in tasks]
    matrix = IntMatrix.from_rows(rows)  # p' x p
    r = rank(matrix)
    return KernelReport(
        a, b, lam, p, p_prime, r, p - r, seed,
        points_domain=domain.points,
        points_target=target.points,
        elapsed=time.monotonic() - started,
    )


@dataclass
class LambdaOutcome:
    """Per-type result of a sweep; either a report or a recorded failure."""

    lam: Partition
    report: KernelReport | None
    error: str | None = None


def _kernel_task(args) -> LambdaOutcome:
    a, b, parts, seed = args
    lam = Partition(parts)
    try:
        return LambdaOutcome(lam, kernel_multiplicity(a, b, lam, seed))
    except Exception as exc:  # siblings keep running; the caller decides
        return LambdaOutcome(lam, None, error=f"{type(exc).__name__}: {exc}")


def decompose_kernel(
    a: int,
    b: int,
    lambda_filter=None,
    seed: int = 0,
    workers: int = 1,
) -> list[LambdaOutcome]:
    """One report per partition of a*b with at most a rows, in enumeration
    order; per-type failures are collected without aborting the others."""
    lams = enumerate_partitions(a * b, a)
    if lambda_filter is not None:
        wanted = {Partition(tuple(x.parts)) if isinstance(x, Partition) else Partition.parse(x)
                  for x in lambda_filter}
        lams = [lam for lam in lams if lam in wanted]
    tasks = [(a, b, lam.parts, seed) for lam in lams]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_kernel_task, tasks))
    return [_kernel_task(t) for t in tasks]


# ---------------------------------------------------------------------------
# shard files


def shard_entries(
    a: int, b: int, lam: Partition, seed: int, shard: ShardSpec
) -> tuple[dict, list[dict]]:
    """Header and rows of one shard file.

    Every shard rebuilds the bases deterministically from the seed; only the
    image evaluations are restricted to the shard's subtrees.
    """
    p = plethysm_coefficient(a, b, lam)
    p_prime = plethysm_coefficient(b, a, lam)
    _check_conjecture(a, b, lam, p, p_prime)
    header = {
        "header": True,
        "a": a,
        "b": b,
        "lambda": str(lam),
        "seed": seed,
        "p": p,
        "p_prime": p_prime,
        "D": shard.depth,
        "N": shard.count,
    }
    rows: list[dict] = []
    if p == 0 or p_prime == 0:
        return header, rows
    domain = build_hwv_basis("ab", a, b, lam, seed)
    target = build_hwv_basis("ba", a, b, lam, seed)
    for j, pt in enumerate(target.points):
        for i, f in enumerate(domain.tableaux):
            value = evaluate_psi_image(f, pt, shard)
            rows.append(
                {"f": i, "v": j, "D": shard.depth, "N": shard.count,
                 "C": shard.index, "value": str(value)}
            )
    return header, rows


def write_shard_file(path, header: dict, rows: list[dict]) -> None:
    with open(path, "w") as fh:
        fh.write(json.dumps(header, sort_keys=True, separators=(",", ":")) + "\n")
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")


def checkpoint_merge(shard_files) -> KernelReport:
    """Assemble one report from a complete set of shard files.

    Every (tableau, point, shard index) must appear exactly once across the
    files; entries are summed over the shard indices.
    """
    header = None
    cells: dict[tuple[int, int, int], int] = {}
    for path in shard_files:
        with open(path) as fh:
            lines = [line for line in fh.read().splitlines() if line.strip()]
        if not lines:
            raise IncompleteCoverage(f"empty shard file {path}")
        head = json.loads(lines[0])
        if not head.get("header"):
            raise IncompleteCoverage(f"missing header in {path}")
        if header is None:
            header = head
        elif {k: header[k] for k in ("a", "b", "lambda", "seed", "p", "p_prime", "D", "N")} != \
                {k: head[k] for k in ("a", "b", "lambda", "seed", "p", "p_prime", "D", "N")}:
            raise IncompleteCoverage(f"shard file {path} belongs to a different run")
        for line in lines[1:]:
            row = json.loads(line)
            key = (row["f"], row["v"], row["C"])
            if key in cells:
                raise DuplicateShard(f"duplicate cell {key} in {path}")
            if not 0 <= row["C"] < head["N"]:
                raise IncompleteCoverage(f"shard index {row['C']} outside 0..{head['N'] - 1}")
            cells[key] = int(row["value"])
    if header is None:
        raise IncompleteCoverage("no shard files")
    a, b = header["a"], header["b"]
    lam = Partition.parse(header["lambda"])
    seed = header["seed"]
    p, p_prime, n_shards = header["p"], header["p_prime"], header["N"]
    if p == 0:
        return KernelReport(a, b, lam, p, p_prime, 0, 0, seed)
    domain = build_hwv_basis("ab", a, b, lam, seed)
    if p_prime == 0:
        return KernelReport(a, b, lam, p, p_prime, 0, p, seed,
                            points_domain=domain.points)
    target = build_hwv_basis("ba", a, b, lam, seed)
    matrix_rows = []
    for j in range(p_prime):
        row = []
        for i in range(p):
            total = 0
            for c in range(n_shards):
                key = (i, j, c)
                if key not in cells:
                    raise IncompleteCoverage(f"missing cell {key}")
                total += cells[key]
            row.append(total)
        matrix_rows.append(row)
    if len(cells) != p * p_prime * n_shards:
        extra = set(cells) - {
            (i, j, c) for i in range(p) for j in range(p_prime) for c in range(n_shards)
        }
        raise IncompleteCoverage(f"unexpected cells {sorted(extra)}")
    r = rank(IntMatrix.from_rows(matrix_rows))
    return KernelReport(
        a, b, lam, p, p_prime, r, p - r, seed,
        points_domain=domain.points,
        points_target=target.points,
    )
