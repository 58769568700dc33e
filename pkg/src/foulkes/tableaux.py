"""Partitions, Young diagram fillings, and symmetrized tableaux.

Shared vocabulary for the whole pipeline: shapes are partitions, a filling
puts positive integers into the boxes of a shape, and a symmetrized tableau
is a filling with rectangular content considered up to relabelling of its
entry values (displayed with letters A, B, C, ...).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("empty partition")
        for i, p in enumerate(self.parts):
            if p < 1:
                raise ValueError(f"non-positive part {p}")
            if i and p > self.parts[i - 1]:
                raise ValueError(f"parts not weakly decreasing: {self.parts}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def column_lengths(self) -> tuple[int, ...]:
        """Lengths of the columns, i.e. the conjugate partition."""
        return tuple(
            sum(1 for p in self.parts if p > c) for c in range(self.parts[0])
        )

    def conjugate(self) -> "Partition":
        return Partition(self.column_lengths())

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse a comma-separated part list such as ``"14,7,2,2"``."""
        try:
            parts = tuple(int(x) for x in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad partition string {text!r}") from exc
        return cls(parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def enumerate_partitions(weight: int, max_rows: int) -> list[Partition]:
    """All partitions of ``weight`` with at most ``max_rows`` parts.

    Ordered reverse-lexicographically, largest first: (4), (3,1), (2,2).
    """
    if weight < 1 or max_rows < 1:
        raise ValueError("weight and max_rows must be positive")
    out: list[Partition] = []
    prefix: list[int] = []

    def rec(remaining: int, max_part: int) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        slots = max_rows - len(prefix)
        if slots == 0:
            return
        for part in range(min(max_part, remaining), 0, -1):
            if remaining - part > (slots - 1) * part:
                continue
            prefix.append(part)
            rec(remaining - part, part)
            prefix.pop()

    rec(weight, weight)
    return out


@dataclass(frozen=True)
class ContentSpec:
    """Rectangular content: ``symbols`` distinct values, each ``repeats`` times."""

    symbols: int
    repeats: int

    def __post_init__(self):
        if self.symbols < 1 or self.repeats < 1:
            raise ValueError("content counts must be positive")

    @property
    def size(self) -> int:
        return self.symbols * self.repeats


@dataclass(frozen=True)
class Filling:
    """A tableau: entries written into the boxes of a partition shape.

    ``rows`` holds the entries row-major.  With a declared content the
    multiset of entries must match it exactly (each value 1..symbols appears
    ``repeats`` times); content None leaves the entries unconstrained, which
    the symbolic tableau calculus is happy to work with.
    """

    rows: tuple[tuple[int, ...], ...]
    content: ContentSpec | None = None

    def __post_init__(self):
        lengths = tuple(len(r) for r in self.rows)
        Partition(lengths)  # validates the shape
        if self.content is None:
            if any(v < 1 for row in self.rows for v in row):
                raise ValueError("entries must be positive")
            return
        counts = [0] * self.content.symbols
        for row in self.rows:
            for v in row:
                if not 1 <= v <= self.content.symbols:
                    raise ValueError(f"entry {v} outside 1..{self.content.symbols}")
                counts[v - 1] += 1
        if any(c != self.content.repeats for c in counts):
            raise ValueError(
                f"entries {self.rows} do not have content "
                f"{self.content.symbols}x{self.content.repeats}"
            )

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def column(self, c: int) -> tuple[int, ...]:
        """Entries of column ``c`` read top to bottom."""
        return tuple(row[c] for row in self.rows if len(row) > c)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(c) for c in range(len(self.rows[0]))]

    @classmethod
    def parse(cls, text: str, content: ContentSpec | None = None) -> "Filling":
        """Parse rows of space-separated integers joined by ``/``.

        Without an explicit content a rectangular one is inferred when the
        entries admit it; otherwise the filling is left content-free.
        """
        rows = tuple(
            tuple(int(x) for x in chunk.split()) for chunk in text.split("/")
        )
        if content is None:
            flat = [v for row in rows for v in row]
            symbols = max(flat)
            repeats, rem = divmod(len(flat), symbols)
            if rem == 0:
                counts = [flat.count(v) for v in range(1, symbols + 1)]
                if all(c == repeats for c in counts):
                    content = ContentSpec(symbols, repeats)
        return cls(rows, content)

    def __str__(self) -> str:
        return "/".join(" ".join(str(v) for v in row) for row in self.rows)


def is_semistandard(t: Filling) -> bool:
    """Weakly increasing along rows, strictly increasing down columns."""
    for row in t.rows:
        if any(a > b for a, b in zip(row, row[1:])):
            return False
    for upper, lower in zip(t.rows, t.rows[1:]):
        if any(upper[c] >= lower[c] for c in range(len(lower))):
            return False
    return True


def column_standard_tableau(shape: Partition) -> Filling:
    """The standard tableau whose entries are consecutive in each column."""
    grid = [[0] * p for p in shape.parts]
    value = 1
    for c, height in enumerate(shape.column_lengths()):
        for r in range(height):
            grid[r][c] = value
            value += 1
    return Filling(tuple(tuple(r) for r in grid), ContentSpec(shape.weight, 1))


def _fill_cells(shape: Partition, content: ContentSpec, order_values):
    """Backtracking fill in row-major order; ``order_values`` fixes the
    candidate order at each cell and therefore which filling is found first.
    """
    if shape.weight != content.size:
        raise ValueError("shape weight does not match content size")
    heights = shape.column_lengths()
    cells = [(r, c) for r, p in enumerate(shape.parts) for c in range(p)]
    grid = [[0] * p for p in shape.parts]
    counts = [content.repeats] * content.symbols

    def rec(idx: int):
        if idx == len(cells):
            yield Filling(tuple(tuple(r) for r in grid), content)
            return
        r, c = cells[idx]
        lo = 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        # cells below in this column still need strictly larger values
        hi = content.symbols - (heights[c] - r - 1)
        candidates = [v for v in range(lo, hi + 1) if counts[v - 1] > 0]
        for v in order_values(idx, candidates):
            grid[r][c] = v
            counts[v - 1] -= 1
            yield from rec(idx + 1)
            grid[r][c] = 0
            counts[v - 1] += 1

    yield from rec(0)


def enumerate_semistandard(shape: Partition, content: ContentSpec) -> list[Filling]:
    """All semistandard fillings, in row-major lexicographic order."""
    return list(_fill_cells(shape, content, lambda idx, cands: cands))


def random_semistandard(
    shape: Partition, content: ContentSpec, seed: int
) -> Filling | None:
    """A seeded pseudorandom semistandard filling, or None if none exists.

    Deterministic for a fixed seed.  Not uniform over all fillings, but every
    filling is reachable for some seed: the backtracking search returns the
    first completion under a seed-shuffled candidate order.
    """
    rng = random.Random(seed)

    def shuffled(idx, cands):
        rng.shuffle(cands)
        return cands

    for filling in _fill_cells(shape, content, shuffled):
        return filling
    return None


@dataclass(frozen=True)
class SymmetrizedTableau:
    """A rectangular-content filling up to relabelling of its entry values.

    Stored with the canonical representative whose values are numbered by
    first occurrence in row-major order, so structural equality coincides
    with equality of the classes.
    """

    base: Filling

    def __post_init__(self):
        if self.base.content is None:
            raise ValueError("a symmetrized tableau needs a rectangular content")
        object.__setattr__(self, "base", _canonical_letters(self.base))

    @property
    def shape(self) -> Partition:
        return self.base.shape

    @property
    def content(self) -> ContentSpec:
        return self.base.content

    def letters(self) -> str:
        """Display form with letters, e.g. ``"AACC/BB"``."""
        return "/".join(
            "".join(_LETTERS[v - 1] for v in row) for row in self.base.rows
        )

    @classmethod
    def parse_letters(cls, text: str) -> "SymmetrizedTableau":
        rows = tuple(
            tuple(_LETTERS.index(ch) + 1 for ch in chunk.strip())
            for chunk in text.split("/")
        )
        flat = [v for row in rows for v in row]
        symbols = len(set(flat))
        repeats, rem = divmod(len(flat), symbols)
        if rem:
            raise ValueError(f"letters {text!r} do not give rectangular content")
        return cls(Filling(rows, ContentSpec(symbols, repeats)))

    def __str__(self) -> str:
        return self.letters()


def _canonical_letters(base: Filling) -> Filling:
    relabel: dict[int, int] = {}
    for row in base.rows:
        for v in row:
            if v not in relabel:
                relabel[v] = len(relabel) + 1
    rows = tuple(tuple(relabel[v] for v in row) for row in base.rows)
    return Filling(rows, base.content)


def coinciding_column_groups(t: SymmetrizedTableau) -> list[tuple[int, ...]]:
    """Partition of the column indices into maximal groups of identical columns.

    Columns are identical when they have the same length and the same letter
    sequence top to bottom.  Singleton groups are included.
    """
    by_column: dict[tuple[int, ...], list[int]] = {}
    for c, col in enumerate(t.base.columns()):
        by_column.setdefault(col, []).append(c)
    groups = [tuple(v) for v in by_column.values()]
    groups.sort(key=lambda g: g[0])
    return groups
