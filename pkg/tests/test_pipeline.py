import json

import pytest

from foulkes import (
    ContentSpec,
    KernelReport,
    Partition,
    ShardSpec,
    build_hwv_basis,
    checkpoint_merge,
    decompose_kernel,
    enumerate_partitions,
    kernel_multiplicity,
    plethysm_coefficient,
    shard_entries,
    subseed,
    write_shard_file,
)
from foulkes.intlinalg import rank
from foulkes.pipeline import ConjectureWitness, _check_conjecture
from oracles import symbolic_kernel_multiplicity


class TestSubseed:
    def test_deterministic_and_label_sensitive(self):
        assert subseed(7, "x", 1) == subseed(7, "x", 1)
        assert subseed(7, "x", 1) != subseed(7, "x", 2)
        assert subseed(7, "x") != subseed(8, "x")


class TestBuildHwvBasis:
    def test_certified_square_full_rank(self):
        lam = Partition((4, 2))
        basis = build_hwv_basis("ba", 3, 2, lam, seed=5)
        p_prime = plethysm_coefficient(2, 3, lam)
        assert basis.dim == p_prime == 1
        assert basis.eval_matrix.nrows == basis.eval_matrix.ncols == p_prime
        assert rank(basis.eval_matrix) == p_prime

    def test_zero_space_returns_none(self):
        assert build_hwv_basis("ab", 2, 2, Partition((3, 1)), seed=0) is None

    def test_seed_determinism(self):
        lam = Partition((6, 3))
        one = build_hwv_basis("ab", 3, 3, lam, seed=9)
        two = build_hwv_basis("ab", 3, 3, lam, seed=9)
        assert one.tableaux == two.tableaux
        assert one.points == two.points
        assert one.eval_matrix == two.eval_matrix

    def test_bigger_space(self):
        # (4,4) at weight 16 has types with multiplicity 2
        lam = Partition((7, 5, 3, 1))
        basis = build_hwv_basis("ab", 4, 4, lam, seed=2)
        assert basis.dim == plethysm_coefficient(4, 4, lam)
        assert rank(basis.eval_matrix) == basis.dim


class TestKernelMultiplicity:
    def test_psi22_injective_everywhere(self):
        for lam in enumerate_partitions(4, 2):
            report = kernel_multiplicity(2, 2, lam, seed=1)
            assert report.kernel_mult == 0
            assert 0 <= report.kernel_mult <= report.p
            assert report.kernel_mult == report.p - report.rank

    def test_psi32_kernel_is_the_three_row_type(self):
        values = {
            str(lam): kernel_multiplicity(3, 2, lam, seed=1).kernel_mult
            for lam in enumerate_partitions(6, 3)
        }
        assert values == {
            "6": 0, "5,1": 0, "4,2": 0, "4,1,1": 0,
            "3,3": 0, "3,2,1": 0, "2,2,2": 1,
        }

    @pytest.mark.parametrize("a,b", [(2, 2), (3, 2), (2, 3)])
    def test_agrees_with_symbolic_oracle(self, a, b):
        for lam in enumerate_partitions(a * b, a):
            numeric = kernel_multiplicity(a, b, lam, seed=3).kernel_mult
            assert numeric == symbolic_kernel_multiplicity(a, b, lam), lam

    def test_seed_independence(self):
        for lam in enumerate_partitions(6, 3):
            values = {kernel_multiplicity(3, 2, lam, seed=s).kernel_mult
                      for s in (1, 2, 3)}
            assert len(values) == 1

    def test_workers_do_not_change_values(self):
        lam = Partition((4, 2))
        a = kernel_multiplicity(3, 2, lam, seed=4, workers=1)
        b = kernel_multiplicity(3, 2, lam, seed=4, workers=3)
        assert a.to_json_line() == b.to_json_line()

    def test_conjecture_guard(self):
        with pytest.raises(ConjectureWitness):
            _check_conjecture(2, 3, Partition((6,)), p=2, p_prime=1)
        # reversed pairs may legitimately have p > p'
        _check_conjecture(3, 2, Partition((2, 2, 2)), p=1, p_prime=0)


class TestDecomposeKernel:
    def test_psi33_sweep_all_zero(self):
        outcomes = decompose_kernel(3, 3, seed=7)
        assert all(o.report is not None for o in outcomes)
        assert all(o.report.kernel_mult == 0 for o in outcomes)
        assert [o.lam for o in outcomes] == enumerate_partitions(9, 3)

    def test_lambda_filter(self):
        outcomes = decompose_kernel(3, 2, ["4,2"], seed=7)
        assert len(outcomes) == 1
        assert str(outcomes[0].lam) == "4,2"

    def test_worker_counts_agree(self):
        one = decompose_kernel(2, 3, seed=5, workers=1)
        four = decompose_kernel(2, 3, seed=5, workers=4)
        assert [o.report.to_json_line() for o in one] == \
            [o.report.to_json_line() for o in four]


class TestKernelReport:
    def test_canonical_roundtrip(self):
        report = kernel_multiplicity(3, 2, Partition((4, 2)), seed=11)
        line = report.to_json_line()
        again = KernelReport.from_json_line(line)
        assert again.to_json_line() == line

    def test_elapsed_not_serialized(self):
        report = kernel_multiplicity(2, 2, Partition((4,)), seed=1)
        assert report.elapsed is not None
        assert "elapsed" not in report.to_json_line()

    def test_csv_row(self):
        report = kernel_multiplicity(3, 2, Partition((2, 2, 2)), seed=1)
        assert report.csv_row() == "2,2,2,1,0,0,1"


class TestShardFiles:
    def make_files(self, tmp_path, lam, n_shards, depth, seed=13):
        paths = []
        for c in range(n_shards):
            shard = ShardSpec(depth, n_shards, c)
            header, rows = shard_entries(3, 2, lam, seed, shard)
            path = tmp_path / f"shard-{c}-of-{n_shards}.jsonl"
            write_shard_file(path, header, rows)
            paths.append(path)
        return paths

    @pytest.mark.parametrize("n_shards,depth", [(1, 0), (3, 1), (2, 2)])
    def test_merge_equals_unsharded(self, tmp_path, n_shards, depth):
        lam = Partition((4, 2))
        direct = kernel_multiplicity(3, 2, lam, seed=13)
        merged = checkpoint_merge(self.make_files(tmp_path, lam, n_shards, depth))
        assert merged.to_json_line() == direct.to_json_line()

    def test_incomplete_coverage(self, tmp_path):
        from foulkes import IncompleteCoverage

        paths = self.make_files(tmp_path, Partition((4, 2)), 3, 1)
        with pytest.raises(IncompleteCoverage):
            checkpoint_merge(paths[:2])

    def test_duplicate_shard(self, tmp_path):
        from foulkes import DuplicateShard

        paths = self.make_files(tmp_path, Partition((4, 2)), 2, 1)
        # repeat a row inside one file
        lines = paths[0].read_text().splitlines()
        paths[0].write_text("\n".join(lines + [lines[1]]) + "\n")
        with pytest.raises(DuplicateShard):
            checkpoint_merge(paths)

    def test_duplicate_across_files(self, tmp_path):
        from foulkes import DuplicateShard

        paths = self.make_files(tmp_path, Partition((4, 2)), 2, 1)
        extra = tmp_path / "copy.jsonl"
        extra.write_text(paths[0].read_text())
        with pytest.raises(DuplicateShard):
            checkpoint_merge(paths + [extra])

    def test_mismatched_runs_rejected(self, tmp_path):
        from foulkes import IncompleteCoverage

        paths = self.make_files(tmp_path, Partition((4, 2)), 2, 1)
        other = self.make_files(tmp_path / "other", Partition((4, 2)), 2, 1, seed=14)

        (tmp_path / "other").mkdir(exist_ok=True)
        with pytest.raises(IncompleteCoverage):
            checkpoint_merge([paths[0], other[1]])

    def test_zero_dimensional_type(self, tmp_path):
        lam = Partition((5, 1))  # p = 0 at (3,2)
        merged = checkpoint_merge(self.make_files(tmp_path, lam, 2, 1))
        assert merged.kernel_mult == 0
        assert merged.p == 0
