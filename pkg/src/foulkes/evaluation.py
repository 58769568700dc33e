"""Exact evaluation of tableaux and of map images at integer points.

A point is a sum of integer linear forms raised to a power.  Evaluating a
rectangular-content tableau there reduces to products of minors of the form
coordinates, so all minors that can arise are precomputed once per point and
every search leaf is a table lookup.  The image of a symmetrized tableau is
evaluated with a pruned depth-first placement tree: coinciding columns bound
the admissible top entries, equal-form collisions inside a column are cut
immediately, and subtrees at a fixed depth can be dealt out to shards.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from math import factorial

from .straightening import TableauSum, sort_with_parity
from .tableaux import Filling, SymmetrizedTableau, coinciding_column_groups


@dataclass(frozen=True)
class Point:
    """v = sum over the forms l of l**power, each form an integer vector."""

    forms: tuple[tuple[int, ...], ...]
    power: int

    def __post_init__(self):
        if not self.forms:
            raise ValueError("a point needs at least one form")
        if self.power < 1:
            raise ValueError("power must be positive")
        if len({len(f) for f in self.forms}) != 1:
            raise ValueError("forms must share one ambient dimension")

    @property
    def n(self) -> int:
        return len(self.forms[0])

    @property
    def m(self) -> int:
        return len(self.forms)

    def to_dict(self) -> dict:
        return {"forms": [list(f) for f in self.forms], "power": self.power}

    @classmethod
    def from_dict(cls, d: dict) -> "Point":
        return cls(tuple(tuple(int(x) for x in f) for f in d["forms"]), d["power"])


def random_point(n: int, m: int, power: int, seed: int, bound: int = 9) -> Point:
    """Seeded random point: m forms with coordinates in [-bound, bound],
    the all-zero form excluded."""
    rng = random.Random(seed)
    forms = []
    while len(forms) < m:
        f = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(f):
            forms.append(f)
    return Point(tuple(forms), power)


@dataclass(frozen=True)
class ShardSpec:
    """Process only the subtrees rooted at depth ``depth`` whose visit index
    is congruent to ``index`` modulo ``count``."""

    depth: int
    count: int
    index: int

    def __post_init__(self):
        if self.depth < 0 or self.count < 1 or not 0 <= self.index < self.count:
            raise ValueError(f"bad shard spec {self}")


UNSHARDED = ShardSpec(0, 1, 0)


def _int_det(rows) -> int:
    """Exact determinant of a small integer matrix (Bareiss)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


class MinorCache:
    """All k x k minors of the form coordinates that a shape can request.

    Keys are (k, strictly increasing k-tuple of form indices); the minor is
    the determinant of the matrix whose rows are the first k coordinates of
    the selected forms.  Lookups with unsorted tuples resolve through the
    sorted key and the sign of the sorting permutation; repeated indices
    give zero.
    """

    def __init__(self, point: Point, column_lengths):
        lengths = sorted(set(column_lengths))
        if lengths and lengths[-1] > point.n:
            raise ValueError(
                f"column length {lengths[-1]} exceeds ambient dimension {point.n}"
            )
        if lengths and lengths[0] < 1:
            raise ValueError("column lengths must be positive")
        self.point = point
        self._dets: dict[tuple[int, ...], int] = {}
        for k in lengths:
            for combo in combinations(range(point.m), k):
                rows = [point.forms[i][:k] for i in combo]
                self._dets[combo] = _int_det(rows)

    def lookup(self, indices) -> int:
        indices = tuple(indices)
        if len(set(indices)) != len(indices):
            return 0
        sign, key = sort_with_parity(indices)
        return sign * self._dets[key]


def build_minor_cache(p: Point, column_lengths) -> MinorCache:
    return MinorCache(p, column_lengths)


def evaluate_tableau(t, v: Point, cache: MinorCache | None = None) -> int:
    """Value at v of the function given by a rectangular-content tableau.

    Sums over all ways to hand one form of v to each entry value; every
    column then contributes the minor of its assigned forms.  Exact integer.
    """
    base = t.base if isinstance(t, SymmetrizedTableau) else t
    if base.content is None:
        raise ValueError("evaluation needs a rectangular content")
    if v.power != base.content.repeats:
        raise ValueError(
            f"point power {v.power} != content repeats {base.content.repeats}"
        )
    if cache is None:
        cache = build_minor_cache(v, base.shape.column_lengths())
    columns = base.columns()
    total = 0
    for asg in product(range(v.m), repeat=base.content.symbols):
        prod = 1
        for col in columns:
            d = cache.lookup(tuple(asg[e - 1] for e in col))
            if d == 0:
                prod = 0
                break
            prod *= d
        total += prod
    return total


def evaluate_sum(s: TableauSum, v: Point, cache: MinorCache | None = None) -> int:
    """Linear extension of evaluate_tableau to formal sums."""
    if cache is None and s.terms:
        some = next(iter(s.terms))
        cache = build_minor_cache(v, some.shape.column_lengths())
    return sum(c * evaluate_tableau(t, v, cache) for t, c in s.terms.items())


def pruning_bounds(groups, b: int) -> dict[int, tuple[int, int]]:
    """Admissible (min, max) for the top entry of each column.

    Inside a group of r identical columns the top entries are forced to be
    strictly increasing left to right, so the k-th column of the group can
    only hold k..b-r+k.  For r > b the windows come out empty: no valid
    placement exists.  Singleton groups get the trivial (1, b).
    """
    bounds: dict[int, tuple[int, int]] = {}
    for group in groups:
        r = len(group)
        for k, col in enumerate(sorted(group), start=1):
            bounds[col] = (k, b - r + k)
    return bounds


def _range_mask(lo: int, hi: int) -> int:
    # bits for numbers lo..hi (1-based); empty ranges give 0
    if lo > hi:
        return 0
    return ((1 << hi) - 1) ^ ((1 << (lo - 1)) - 1)


def _multiset_permutations(rep) -> int:
    counts: dict[int, int] = {}
    for x in rep:
        counts[x] = counts.get(x, 0) + 1
    out = factorial(len(rep))
    for c in counts.values():
        out //= factorial(c)
    return out


def evaluate_psi_image(
    f: SymmetrizedTableau,
    v: Point,
    shard: ShardSpec = UNSHARDED,
    use_symmetry: bool = True,
    heuristic: str = "fewest",
) -> int:
    """Value of the map image of f at the point v, as an exact integer.

    Outer loop: assignments of one form of v to each number 1..b, reduced to
    multisets (relabelling the numbers permutes placements bijectively).
    Inner loop: depth-first placement of the numbers onto the letters, the
    next cell chosen by fewest legal numbers, pruning a branch as soon as a
    column holds two cells assigned the same form and whenever a completed
    column has minor zero.  The full value is the sum over all shard indices;
    heuristics and pruning change cost, never the value.
    """
    if heuristic not in ("fewest", "fixed"):
        raise ValueError(f"unknown heuristic {heuristic!r}")
    base = f.base
    a = base.content.symbols
    b = base.content.repeats
    if v.power != a:
        raise ValueError(f"point power {v.power} != letter count {a}")
    m = v.m
    heights = base.shape.column_lengths()
    ncols = len(heights)

    # cells listed in (column, row) order; this is also the heuristic tie-break
    cells = [(r, c) for c in range(ncols) for r in range(heights[c])]
    ncells = len(cells)
    letter_of = [base.rows[r][c] - 1 for (r, c) in cells]
    col_of = [c for (_, c) in cells]
    cells_of_col = [[] for _ in range(ncols)]
    for cid, (r, c) in enumerate(cells):
        cells_of_col[c].append(cid)  # appended top to bottom

    cache = build_minor_cache(v, heights)
    full_mask = (1 << b) - 1

    # coinciding-column symmetry: force group top entries increasing and
    # multiply the collapsed orderings back in at the end
    collapse = 1
    top_info: dict[int, tuple[int, int, int]] = {}  # cell -> (group, pos, window)
    group_tops: list[list[int]] = []
    if use_symmetry:
        groups = [g for g in coinciding_column_groups(f) if len(g) > 1]
        windows = pruning_bounds(groups, b)
        for g in groups:
            r = len(g)
            collapse *= factorial(r)
            gid = len(group_tops)
            tops = [cells_of_col[c][0] for c in sorted(g)]
            group_tops.append(tops)
            for pos, cell in enumerate(tops):
                lo, hi = windows[sorted(g)[pos]]
                top_info[cell] = (gid, pos, _range_mask(lo, hi))

    D, N, C = shard.depth, shard.count, shard.index
    counter = 0
    total = 0

    for rep in combinations_with_replacement(range(m), b):
        mult = _multiset_permutations(rep)
        number_form = rep  # form index handed to number q is rep[q-1]
        same_form_mask = [0] * m
        for q0, j in enumerate(rep):
            same_form_mask[j] |= 1 << q0

        avail = [full_mask] * a
        blocked = [0] * ncols
        colcount = [0] * ncols
        num_at = [0] * ncells
        block_sum = 0

        def legal_mask(cell: int) -> int:
            mask = avail[letter_of[cell]] & ~blocked[col_of[cell]]
            info = top_info.get(cell)
            if info is not None and mask:
                gid, pos, window = info
                mask &= window
                for p2, cid2 in enumerate(group_tops[gid]):
                    q2 = num_at[cid2]
                    if q2 and p2 != pos:
                        if p2 < pos:
                            mask &= _range_mask(q2 + 1, b)
                        else:
                            mask &= _range_mask(1, q2 - 1)
            return mask

        def dfs(depth: int, prod: int) -> None:
            nonlocal counter, block_sum
            if depth == D:
                counter += 1
                if (counter - 1) % N != C:
                    return
            if depth == ncells:
                block_sum += prod
                return
            best_cell = -1
            best_mask = 0
            best_count = b + 1
            for cell in range(ncells):
                if num_at[cell]:
                    continue
                mask = legal_mask(cell)
                cnt = mask.bit_count()
                if cnt < best_count:
                    best_count = cnt
                    best_cell = cell
                    best_mask = mask
                    if cnt == 0:
                        break
                if heuristic == "fixed":
                    break
            if best_count == 0:
                return
            cell = best_cell
            L = letter_of[cell]
            c = col_of[cell]
            mask = best_mask
            while mask:
                qbit = mask & -mask
                mask ^= qbit
                q = qbit.bit_length()
                save_avail = avail[L]
                save_blocked = blocked[c]
                avail[L] &= ~qbit
                blocked[c] |= same_form_mask[number_form[q - 1]]
                colcount[c] += 1
                num_at[cell] = q
                ok = True
                newprod = prod
                if colcount[c] == heights[c]:
                    det = cache.lookup(
                        tuple(number_form[num_at[cid] - 1] for cid in cells_of_col[c])
                    )
                    if det == 0:
                        ok = False
                    else:
                        newprod = prod * det
                if ok:
                    dfs(depth + 1, newprod)
                num_at[cell] = 0
                colcount[c] -= 1
                blocked[c] = save_blocked
                avail[L] = save_avail

        dfs(0, 1)
        total += mult * block_sum

    return total * collapse
