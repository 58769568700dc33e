"""Exact linear algebra over the integers.

Rank and kernel dimension of dense integer matrices by fraction-free
(Bareiss) elimination, plus an incremental row basis used while hunting for
linearly independent evaluation vectors.  No floating point anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix; entries may be arbitrarily large."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged rows")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    def to_json(self) -> str:
        """Entries as decimal strings; values routinely exceed word size."""
        return json.dumps([[str(v) for v in row] for row in self.entries])

    @classmethod
    def from_json(cls, text: str) -> "IntMatrix":
        return cls.from_rows(
            [[int(v) for v in row] for row in json.loads(text)]
        )


def rank(m: IntMatrix) -> int:
    """Rank over the rationals via Bareiss elimination.

    Pivots take the largest magnitude in the current column to limit entry
    growth; zero columns are skipped.
    """
    a = [list(row) for row in m.entries]
    nrows, ncols = len(a), (len(a[0]) if a else 0)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        pivot = max(range(r, nrows), key=lambda i: abs(a[i][c]))
        if a[pivot][c] == 0:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        for i in range(r + 1, nrows):
            iv = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (pv * row_i[j] - iv * row_r[j]) // prev
            row_i[c] = 0
        prev = pv
        r += 1
    return r


def kernel_dimension(m: IntMatrix) -> int:
    """Dimension of the right kernel: columns minus rank."""
    return m.ncols - rank(m)


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank of the matrix reduced modulo a prime.

    Always a lower bound on the rational rank; useful as a cheap prefilter
    but never a substitute for the exact elimination.
    """
    a = [[v % p for v in row] for row in m.entries]
    nrows, ncols = len(a), (len(a[0]) if a else 0)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(v * inv) % p for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(v - f * w) % p for v, w in zip(a[i], a[r])]
        r += 1
    return r


def _normalize(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, v)
        if g == 1:
            return row
    return [v // g for v in row] if g > 1 else row


class RowBasis:
    """Incrementally maintained set of linearly independent integer rows.

    Rows are kept in a fraction-free echelon form (gcd-normalized to control
    entry growth).  Single owner, one writer.
    """

    def __init__(self, width: int):
        if width < 1:
            raise ValueError("width must be positive")
        self.width = width
        self._echelon: list[tuple[int, list[int]]] = []  # (pivot column, row)

    @property
    def rank(self) -> int:
        return len(self._echelon)

    def try_add_row(self, row) -> bool:
        """Accept the row iff it increases the rank."""
        row = [int(v) for v in row]
        if len(row) != self.width:
            raise ValueError(f"row width {len(row)} != basis width {self.width}")
        for pc, prow in self._echelon:
            if row[pc]:
                pv, rv = prow[pc], row[pc]
                row = [pv * a - rv * b for a, b in zip(row, prow)]
                row = _normalize(row)
        pc = next((j for j, v in enumerate(row) if v), None)
        if pc is None:
            return False
        self._echelon.append((pc, row))
        self._echelon.sort(key=lambda t: t[0])
        return True
