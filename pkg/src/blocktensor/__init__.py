"""Dense block tensors: vec orderings, shuffle permutations, block unfoldings
and contractions carried out as (blocked) matrix multiplication."""

from .blocking import (
    Blocking,
    BlockLayout,
    BlockUnfolding,
    UniformParams,
    block_unfold,
    build_P_M,
    build_P_M_uniform,
    extract_block,
    get_block,
    locate,
    make_blocking,
    tracy_singh,
    vec_blocked,
    vol,
)
from .contraction import (
    BlockedContractionPlan,
    ContractionPlan,
    contract_block_recipe,
    contract_blocked,
    contract_naive,
    contract_unfolded,
    mode_product,
    multilinear_blocked,
    multilinear_blocked_sequential,
    multilinear_kron,
    multilinear_mode_products,
    multilinear_naive,
)
from .core import (
    Tensor,
    approx_equal,
    ivec,
    ivec_inverse,
    multi_indices,
    outer_product,
    rank1,
    vec,
)
from .errors import BlockingError, PlanError, ShapeError, TensorFormatError
from .permutation import PermutationVector, perfect_shuffle
from .transpose import (
    adjacent_swap_perm,
    middle_swap_perm,
    p_transpose,
    to_front_perm,
    transpose_perm,
    transpose_perm_via_swaps,
)
from .unfolding import UnfoldedMatrix, UnfoldSpec, fold, mode_unfold, unfold, unfold_col, unfold_row

__version__ = "0.1.0"
