"""Exact kernel multiplicities of the symmetric-power (Foulkes-Howe) map.

The library computes, for a pair (a, b) and a partition of a*b, the
multiplicity of that irreducible type in the kernel of the natural map
Sym^a Sym^b V -> Sym^b Sym^a V, entirely in integer arithmetic: tableau
combinatorics, a symbolic straightening oracle, determinant-product
evaluation at integer points, and exact rank computations.
"""

__version__ = "0.1.0"

from .evaluation import (
    MinorCache,
    Point,
    ShardSpec,
    UNSHARDED,
    build_minor_cache,
    evaluate_psi_image,
    evaluate_sum,
    evaluate_tableau,
    pruning_bounds,
    random_point,
)
from .intlinalg import IntMatrix, RowBasis, kernel_dimension, rank, rank_mod_p
from .pipeline import (
    ConjectureWitness,
    DuplicateShard,
    HwvBasis,
    IncompleteCoverage,
    KernelReport,
    LambdaOutcome,
    RetryExhausted,
    build_hwv_basis,
    checkpoint_merge,
    decompose_kernel,
    kernel_multiplicity,
    shard_entries,
    subseed,
    write_shard_file,
)
from .plethysm import (
    dims_table,
    plethysm_coefficient,
    schur_dimension,
    sym_sym_dimension,
    weight_multiplicity,
)
from .straightening import (
    TableauSum,
    apply_psi_symbolic,
    grassmann_canonicalize,
    number_placements,
    plucker_expand,
    straighten,
    straighten_filling,
)
from .tableaux import (
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

__all__ = [name for name in dir() if not name.startswith("_")]
