"""Symbolic tableau calculus: Grassmann and Pluecker relations, straightening,
and the combinatorial symmetric-power map on symmetrized tableaux.

Exact but slow for large shapes; in this package it serves as the
independent correctness oracle for the numeric evaluation path.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .tableaux import ContentSpec, Filling, SymmetrizedTableau, is_semistandard


class TableauSum:
    """Formal integer linear combination of fillings of one shape and content.

    Zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Filling, int] | None = None):
        self.terms: dict[Filling, int] = {}
        if terms:
            for t, c in terms.items():
                self.add(t, c)

    def add(self, filling: Filling, coeff: int) -> None:
        if coeff == 0:
            return
        new = self.terms.get(filling, 0) + coeff
        if new:
            self.terms[filling] = new
        else:
            del self.terms[filling]

    def add_sum(self, other: "TableauSum", scale: int = 1) -> None:
        for t, c in other.terms.items():
            self.add(t, scale * c)

    def scaled(self, k: int) -> "TableauSum":
        return TableauSum({t: k * c for t, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[Filling, int]]:
        """Terms in a deterministic order (row-major entry sequence)."""
        return sorted(self.terms.items(), key=lambda tc: tc[0].rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, TableauSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * ({t})" for t, c in self.items())


def sort_with_parity(seq) -> tuple[int, tuple[int, ...]]:
    """Sort a sequence, returning (sign of the sorting permutation, sorted).

    Inversion count; quadratic, but only ever used on short columns.
    """
    seq = list(seq)
    inversions = sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )
    return (-1) ** inversions, tuple(sorted(seq))


def grassmann_canonicalize(t: Filling) -> tuple[int, Filling] | None:
    """Sort every column ascending, accumulating the signs.

    Returns None when some column repeats an entry (the tableau is zero).
    """
    sign = 1
    columns = []
    for col in t.columns():
        if len(set(col)) != len(col):
            return None
        s, sorted_col = sort_with_parity(col)
        sign *= s
        columns.append(sorted_col)
    rows = tuple(
        tuple(columns[c][r] for c in range(len(row)))
        for r, row in enumerate(t.rows)
    )
    return sign, Filling(rows, t.content)


def semistandard_violation(t: Filling) -> tuple[int, int] | None:
    """First (column pair j, row r) where the row weakly-increasing rule fails.

    Assumes columns already sorted; scans pairs left to right, rows top to
    bottom, 0-based j and 1-based r.
    """
    cols = t.columns()
    for j in range(len(cols) - 1):
        left, right = cols[j], cols[j + 1]
        for r in range(len(right)):
            if left[r] > right[r]:
                return j, r + 1
    return None


def plucker_expand(t: Filling, j: int, k: int) -> TableauSum:
    """Right-hand side of the exchange relation between columns j and j+1.

    The top k entries of column j+1 trade places with every k-element
    selection of column j, each side keeping its vertical order.  The input
    tableau itself is not a term.  Terms are returned column-sorted with
    signs absorbed; exchanges that repeat an entry inside a column drop out.
    """
    cols = t.columns()
    if not (0 <= j < len(cols) - 1):
        raise ValueError(f"no column pair at {j}")
    left, right = list(cols[j]), list(cols[j + 1])
    if not (1 <= k <= len(right)):
        raise ValueError(f"depth {k} exceeds column {j + 1} of length {len(right)}")
    moved = right[:k]
    out = TableauSum()
    for selection in combinations(range(len(left)), k):
        new_left = left[:]
        for pos, value in zip(selection, moved):
            new_left[pos] = value
        new_right = [left[pos] for pos in selection] + right[k:]
        new_cols = cols[:j] + [tuple(new_left)] + [tuple(new_right)] + cols[j + 2:]
        rows = tuple(
            tuple(new_cols[c][r] for c in range(len(row)))
            for r, row in enumerate(t.rows)
        )
        canon = grassmann_canonicalize(Filling(rows, t.content))
        if canon is not None:
            sign, filling = canon
            out.add(filling, sign)
    return out


# straightened forms of column-sorted fillings, shared across calls
_STRAIGHT_CACHE: dict[Filling, TableauSum] = {}
_IN_PROGRESS: set[Filling] = set()


def straighten_filling(t: Filling) -> TableauSum:
    """Express a filling over the semistandard basis (zero if a column repeats)."""
    canon = grassmann_canonicalize(t)
    if canon is None:
        return TableauSum()
    sign, t = canon
    return _straighten_sorted(t).scaled(sign)


def _straighten_sorted(t: Filling) -> TableauSum:
    cached = _STRAIGHT_CACHE.get(t)
    if cached is not None:
        return cached
    violation = semistandard_violation(t)
    if violation is None:
        result = TableauSum({t: 1})
        _STRAIGHT_CACHE[t] = result
        return result
    if t in _IN_PROGRESS:
        raise RuntimeError(f"straightening cycle at {t}")
    _IN_PROGRESS.add(t)
    try:
        j, r = violation
        result = TableauSum()
        for term, coeff in plucker_expand(t, j, r).terms.items():
            result.add_sum(_straighten_sorted(term), coeff)
    finally:
        _IN_PROGRESS.discard(t)
    _STRAIGHT_CACHE[t] = result
    return result


def straighten(s: TableauSum) -> TableauSum:
    """Straighten every term; the result has semistandard terms only."""
    out = TableauSum()
    for t, c in s.terms.items():
        out.add_sum(straighten_filling(t), c)
    assert all(is_semistandard(t) for t in out.terms)
    return out


def number_placements(f: SymmetrizedTableau):
    """Fillings from writing 1..repeats onto each letter's boxes in any order.

    Placements that repeat a number inside a column are skipped (they are
    zero).  Yields content symbols-per-number fillings: each number 1..b
    appears once per letter, so a times in total.
    """
    base = f.base
    a = base.content.symbols
    b = base.content.repeats
    positions = [[] for _ in range(a)]
    for r, row in enumerate(base.rows):
        for c, v in enumerate(row):
            positions[v - 1].append((r, c))
    grid = [[0] * len(row) for row in base.rows]
    heights = base.shape.column_lengths()
    out_content = ContentSpec(b, a)

    def column_ok(r: int, c: int, q: int) -> bool:
        for r2 in range(heights[c]):
            if r2 != r and grid[r2][c] == q:
                return False
        return True

    def rec(letter: int):
        if letter == a:
            yield Filling(tuple(tuple(row) for row in grid), out_content)
            return
        cells = positions[letter]
        for perm in permutations(range(1, b + 1)):
            ok = True
            placed = 0
            for (r, c), q in zip(cells, perm):
                if not column_ok(r, c, q):
                    ok = False
                    break
                grid[r][c] = q
                placed += 1
            if ok:
                yield from rec(letter + 1)
            for r, c in cells[:placed]:
                grid[r][c] = 0

    yield from rec(0)


def apply_psi_symbolic(f: SymmetrizedTableau) -> TableauSum:
    """Image of a symmetrized tableau under the symmetric-power map,
    straightened onto the semistandard basis of the target side."""
    out = TableauSum()
    for placement in number_placements(f):
        out.add_sum(straighten_filling(placement))
    return out
