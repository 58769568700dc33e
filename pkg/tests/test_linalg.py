import random
from fractions import Fraction

import pytest

from foulkes import IntMatrix, RowBasis, kernel_dimension, rank, rank_mod_p


def rank_fraction_oracle(m: IntMatrix) -> int:
    """Independent oracle: plain Gaussian elimination over exact fractions."""
    a = [[Fraction(v) for v in row] for row in m.entries]
    nrows, ncols = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        a[r] = [v / a[r][c] for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        r += 1
    return r


class TestRank:
    def test_identity(self):
        m = IntMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert rank(m) == 3
        assert kernel_dimension(m) == 0

    def test_zero(self):
        m = IntMatrix.from_rows([[0, 0], [0, 0], [0, 0]])
        assert rank(m) == 0
        assert kernel_dimension(m) == 2

    def test_proportional_rows(self):
        assert rank(IntMatrix.from_rows([[2, 4], [3, 6]])) == 1

    def test_against_fraction_oracle(self):
        rng = random.Random(0)
        for trial in range(60):
            nrows = rng.randint(1, 12)
            ncols = rng.randint(1, 12)
            # mix of dense random and deliberately low-rank matrices
            if trial % 3:
                rows = [[rng.randint(-10**6, 10**6) for _ in range(ncols)]
                        for _ in range(nrows)]
            else:
                k = rng.randint(0, min(nrows, ncols))
                basis = [[rng.randint(-50, 50) for _ in range(ncols)] for _ in range(k)]
                rows = []
                for _ in range(nrows):
                    coeffs = [rng.randint(-3, 3) for _ in range(k)]
                    rows.append([sum(c * b[j] for c, b in zip(coeffs, basis))
                                 for j in range(ncols)])
            m = IntMatrix.from_rows(rows)
            assert rank(m) == rank_fraction_oracle(m)

    def test_big_matrix_against_oracle(self):
        rng = random.Random(1)
        rows = [[rng.randint(-10**6, 10**6) for _ in range(50)] for _ in range(50)]
        m = IntMatrix.from_rows(rows)
        assert rank(m) == rank_fraction_oracle(m)

    def test_invariance_under_permutation_and_scaling(self):
        rng = random.Random(2)
        for _ in range(20):
            rows = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(5)]
            m = IntMatrix.from_rows(rows)
            r = rank(m)
            shuffled = rows[:]
            rng.shuffle(shuffled)
            scaled = [[rng.choice([-3, -1, 2, 5]) * v for v in row] for row in shuffled]
            assert rank(IntMatrix.from_rows(scaled)) == r
            transposed = [list(col) for col in zip(*rows)]
            assert rank(IntMatrix.from_rows(transposed)) == r


class TestModularPrefilter:
    def test_soundness(self):
        rng = random.Random(3)
        for _ in range(40):
            rows = [[rng.randint(-100, 100) for _ in range(7)] for _ in range(6)]
            m = IntMatrix.from_rows(rows)
            exact = rank(m)
            for p in (2, 3, 65537):
                assert rank_mod_p(m, p) <= exact

    def test_can_undershoot(self):
        m = IntMatrix.from_rows([[2, 0], [0, 2]])
        assert rank_mod_p(m, 2) == 0
        assert rank(m) == 2


class TestRowBasis:
    def test_accepts_nonzero_into_empty(self):
        basis = RowBasis(3)
        assert basis.try_add_row([0, 5, 0])
        assert basis.rank == 1

    def test_rejects_dependent(self):
        basis = RowBasis(2)
        assert basis.try_add_row([1, 0])
        assert not basis.try_add_row([2, 0])
        assert basis.rank == 1

    def test_accepts_independent(self):
        basis = RowBasis(2)
        assert basis.try_add_row([1, 1])
        assert basis.try_add_row([1, -1])
        assert basis.rank == 2

    def test_width_mismatch(self):
        basis = RowBasis(2)
        with pytest.raises(ValueError):
            basis.try_add_row([1, 2, 3])

    def test_matches_batch_rank(self):
        rng = random.Random(5)
        for _ in range(30):
            rows = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(8)]
            basis = RowBasis(5)
            accepted = []
            for row in rows:
                if basis.try_add_row(row):
                    accepted.append(row)
            assert basis.rank == rank(IntMatrix.from_rows(rows))
            assert rank(IntMatrix.from_rows(accepted)) == len(accepted)


class TestSerialization:
    def test_json_roundtrip_with_huge_entries(self):
        m = IntMatrix.from_rows([[10**40, -(3**90)], [7, 0]])
        again = IntMatrix.from_json(m.to_json())
        assert again == m
