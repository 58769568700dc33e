import pytest

from foulkes import (
    ContentSpec,
    Filling,
    Partition,
    SymmetrizedTableau,
    coinciding_column_groups,
    column_standard_tableau,
    enumerate_partitions,
    enumerate_semistandard,
    is_semistandard,
    random_semistandard,
)


def partitions_exactly_k(n, k):
    """Independent counting oracle: p(n,k) = p(n-1,k-1) + p(n-k,k)."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return partitions_exactly_k(n - 1, k - 1) + partitions_exactly_k(n - k, k)


class TestPartition:
    def test_validation(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, 0))
        with pytest.raises(ValueError):
            Partition(())

    def test_weight_rows_conjugate(self):
        lam = Partition((4, 2))
        assert lam.weight == 6
        assert lam.rows == 2
        assert lam.column_lengths() == (2, 2, 1, 1)
        assert lam.conjugate().conjugate() == lam

    def test_roundtrip_serialization(self):
        for text in ["14,7,2,2", "1", "3,3,3"]:
            assert str(Partition.parse(text)) == text


class TestEnumeratePartitions:
    def test_examples(self):
        assert [p.parts for p in enumerate_partitions(4, 2)] == [(4,), (3, 1), (2, 2)]
        assert [p.parts for p in enumerate_partitions(1, 5)] == [(1,)]

    def test_count_matches_recurrence(self):
        got = len(enumerate_partitions(25, 5))
        want = sum(partitions_exactly_k(25, k) for k in range(1, 6))
        assert got == want

    @pytest.mark.parametrize("weight,max_rows", [(6, 3), (9, 4), (12, 4), (10, 10)])
    def test_contract(self, weight, max_rows):
        out = enumerate_partitions(weight, max_rows)
        assert len(set(out)) == len(out)
        for lam in out:
            assert lam.weight == weight
            assert lam.rows <= max_rows
        # reverse-lexicographic: strictly decreasing part tuples
        assert all(a.parts > b.parts for a, b in zip(out, out[1:]))
        want = sum(partitions_exactly_k(weight, k) for k in range(1, max_rows + 1))
        assert len(out) == want


class TestFilling:
    def test_content_validation(self):
        with pytest.raises(ValueError):
            Filling(((1, 1), (2, 3)), ContentSpec(2, 2))

    def test_roundtrip_serialization(self):
        t = Filling.parse("1 1 3 3/2 2")
        assert str(t) == "1 1 3 3/2 2"
        assert t.content == ContentSpec(3, 2)
        assert Filling.parse(str(t)) == t

    def test_columns(self):
        t = Filling.parse("1 1 3 3/2 2")
        assert t.columns() == [(1, 2), (1, 2), (3,), (3,)]


class TestSemistandard:
    def test_paper_example(self):
        assert is_semistandard(Filling.parse("1 1 3 3/2 2"))

    def test_row_decrease(self):
        assert not is_semistandard(Filling.parse("2 1"))

    def test_column_not_strict(self):
        t = Filling(((1,), (1,)), ContentSpec(1, 2))
        assert not is_semistandard(t)


class TestColumnStandard:
    def test_4_2(self):
        t = column_standard_tableau(Partition((4, 2)))
        assert t.rows == ((1, 3, 5, 6), (2, 4))

    def test_single_box(self):
        assert column_standard_tableau(Partition((1,))).rows == ((1,),)

    def test_2_2(self):
        assert column_standard_tableau(Partition((2, 2))).rows == ((1, 3), (2, 4))

    def test_always_standard(self):
        for lam in enumerate_partitions(7, 4):
            t = column_standard_tableau(lam)
            assert is_semistandard(t)
            assert t.content == ContentSpec(lam.weight, 1)


class TestRandomSemistandard:
    def test_contract_over_many_seeds(self):
        shapes = [
            (Partition((4, 2)), ContentSpec(3, 2)),
            (Partition((3, 3)), ContentSpec(3, 2)),
            (Partition((5, 3, 1)), ContentSpec(3, 3)),
        ]
        for shape, content in shapes:
            for seed in range(1000):
                t = random_semistandard(shape, content, seed)
                assert t is not None
                assert t.shape == shape
                assert t.content == content
                assert is_semistandard(t)

    def test_impossible_content(self):
        assert random_semistandard(Partition((1, 1, 1)), ContentSpec(1, 3), 5) is None

    def test_unique_filling(self):
        want = Filling.parse("1 1/2 2/3 3")
        for seed in range(50):
            assert random_semistandard(Partition((2, 2, 2)), ContentSpec(3, 2), seed) == want

    def test_determinism(self):
        lam, content = Partition((4, 3, 1)), ContentSpec(4, 2)
        for seed in range(30):
            a = random_semistandard(lam, content, seed)
            b = random_semistandard(lam, content, seed)
            assert a == b

    def test_full_support(self):
        # every semistandard filling should be hit by some seed
        lam, content = Partition((3, 1)), ContentSpec(2, 2)
        everything = set(enumerate_semistandard(lam, content))
        seen = {random_semistandard(lam, content, seed) for seed in range(400)}
        assert seen == everything


class TestSymmetrizedTableau:
    def test_letter_canonicalization(self):
        # value permutations give the same class
        f1 = SymmetrizedTableau(Filling.parse("1 1 3 3/2 2"))
        f2 = SymmetrizedTableau(Filling.parse("2 2 3 3/1 1"))
        f3 = SymmetrizedTableau(Filling.parse("3 3 1 1/2 2"))
        assert f1 == f2 == f3

    def test_letters_roundtrip(self):
        f = SymmetrizedTableau.parse_letters("AACC/BB")
        assert f == SymmetrizedTableau(Filling.parse("1 1 3 3/2 2"))
        assert SymmetrizedTableau.parse_letters(f.letters()) == f


class TestCoincidingColumns:
    def test_paper_example(self):
        f = SymmetrizedTableau.parse_letters("AACC/BB")
        assert coinciding_column_groups(f) == [(0, 1), (2, 3)]

    def test_single_column(self):
        f = SymmetrizedTableau.parse_letters("A/B")
        assert coinciding_column_groups(f) == [(0,)]

    def test_distinct_columns(self):
        f = SymmetrizedTableau.parse_letters("AB")
        assert coinciding_column_groups(f) == [(0,), (1,)]

    def test_is_partition_of_columns(self):
        import random

        rng = random.Random(4)
        for _ in range(100):
            lam = Partition((4, 2, 1))
            t = random_semistandard(lam, ContentSpec(7, 1), rng.randrange(10**6))
            f = SymmetrizedTableau(t)
            groups = coinciding_column_groups(f)
            flat = sorted(c for g in groups for c in g)
            assert flat == list(range(4))
            for g in groups:
                cols = [f.base.column(c) for c in g]
                assert len(set(cols)) == 1
