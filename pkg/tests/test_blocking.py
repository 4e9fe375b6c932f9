import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blocktensor import (
    Blocking,
    BlockingError,
    Tensor,
    UniformParams,
    block_unfold,
    build_P_M,
    build_P_M_uniform,
    extract_block,
    get_block,
    locate,
    make_blocking,
    mode_unfold,
    tracy_singh,
    unfold,
    vec_blocked,
    vol,
)
from blocktensor import permutation as perm
from blocktensor.blocking import P_M_factors, unblock_unfold
from blocktensor.core import multi_indices
from blocktensor.sampling import random_blocking, random_shape

from .oracles import blocks_of, dense_shuffle, kron_list, unfold_loop, vec_blocked_loop

FIG_N = (9, 5, 8)
FIG_PARTS = ([2, 3, 4], [3, 2], [2, 2, 2, 2])


def rand(rng, n):
    return Tensor(rng.standard_normal(int(np.prod(n))), n)


@st.composite
def blocked_shapes(draw, max_order=5, max_numel=4096, max_extent=8):
    d = draw(st.integers(1, max_order))
    n = draw(st.lists(st.integers(1, max_extent), min_size=d, max_size=d).filter(lambda n: np.prod(n) <= max_numel))
    parts = []
    for nk in n:
        cuts = draw(st.sets(st.integers(1, nk - 1), max_size=nk - 1)) if nk > 1 else set()
        edges = [0, *sorted(cuts), nk]
        parts.append(np.diff(edges).tolist())
    return tuple(n), Blocking(parts)


def test_make_blocking_bounds():
    M = make_blocking(FIG_N, FIG_PARTS)
    assert M.b == (3, 2, 4)
    assert M.lower(1).tolist() == [1, 3, 6]
    assert M.upper(1).tolist() == [2, 5, 9]
    assert M.shape == FIG_N


def test_trivial_and_finest_blockings():
    assert make_blocking((3, 4), ([3], [4])).b == (1, 1)
    assert Blocking.trivial((3, 4)).b == (1, 1)
    assert make_blocking((3, 2), ([1, 1, 1], [1, 1])).b == (3, 2)


def test_make_blocking_names_bad_mode():
    with pytest.raises(BlockingError, match="mode 2"):
        make_blocking((4, 5), ([2, 2], [3, 3]))
    with pytest.raises(BlockingError):
        make_blocking((4, 5), ([4],))
    with pytest.raises(BlockingError):
        Blocking([[2, 0]])


def test_extract_block_ranges(rng):
    A = rand(rng, FIG_N)
    M = make_blocking(FIG_N, FIG_PARTS)
    blk = extract_block(A, M, (2, 1, 3))
    assert np.array_equal(blk.array, A.array[2:5, 0:3, 4:6])
    assert extract_block(A, Blocking.trivial(FIG_N), (1, 1, 1)) == A
    with pytest.raises(IndexError):
        extract_block(A, M, (4, 1, 1))


def test_blocks_cover_tensor(rng):
    A = rand(rng, FIG_N)
    M = make_blocking(FIG_N, FIG_PARTS)
    seen = np.zeros(FIG_N, dtype=int)
    for k in multi_indices(M.b):
        sl = tuple(slice(lo - 1, hi) for lo, hi in
                   ((M.lower(m)[km - 1], M.upper(m)[km - 1]) for m, km in enumerate(k, start=1)))
        seen[sl] += 1
        assert np.array_equal(A.array[sl], extract_block(A, M, k).array)
    assert np.all(seen == 1)


def test_vol():
    M = make_blocking(FIG_N, FIG_PARTS)
    assert vol(M, (2, 1, 3)) == 18
    assert vol(Blocking.trivial(FIG_N), (1, 1, 1)) == 360
    assert sum(vol(M, k) for k in multi_indices(M.b)) == 360
    assert M.volumes().tolist() == [vol(M, k) for k in multi_indices(M.b)]


def test_vec_blocked_trivial(rng):
    A = rand(rng, (3, 4, 2))
    assert np.array_equal(vec_blocked(A, Blocking.trivial(A.shape)), A.data)


def test_vec_blocked_block_order_of_matrix(rng):
    A = rand(rng, (5, 6))
    M = make_blocking(A.shape, ([2, 3], [1, 2, 3]))
    order = [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (2, 3)]
    want = np.concatenate([extract_block(A, M, k).data for k in order])
    assert np.array_equal(vec_blocked(A, M), want)


def test_vec_blocked_4x4_uniform():
    want = [1, 2, 5, 6, 3, 4, 7, 8, 9, 10, 13, 14, 11, 12, 15, 16]
    A = Tensor(np.arange(1, 17), (4, 4))
    M = Blocking.uniform((4, 4), (2, 2))
    assert vec_blocked(A, M).tolist() == want
    assert build_P_M(M).tolist() == want


def test_build_P_M_order1_is_identity():
    assert build_P_M(Blocking([[2, 3, 1]])).is_identity()


def test_build_P_M_on_figure_blocking(rng):
    A = rand(rng, FIG_N)
    M = make_blocking(FIG_N, FIG_PARTS)
    assert np.array_equal(perm.apply(build_P_M(M), A.data), vec_blocked(A, M))
    assert np.array_equal(vec_blocked(A, M), vec_blocked_loop(A.array, FIG_PARTS))


@given(blocked_shapes(), st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_build_P_M_matches_block_loop(nM, seed):
    n, M = nM
    A = rand(np.random.default_rng(seed), n)
    got = perm.apply(build_P_M(M), A.data)
    assert np.array_equal(got, vec_blocked_loop(A.array, [m.tolist() for m in M.parts]))
    # applying Q_1, Q_2, ... one after another lands on the same vector
    x = A.data
    for Q in P_M_factors(M):
        x = perm.apply(Q, x)
    assert np.array_equal(x, got)


def test_locate_splits_entries(rng):
    A = rand(rng, FIG_N)
    M = make_blocking(FIG_N, FIG_PARTS)
    for i in multi_indices(FIG_N):
        beta, delta = locate(M, i)
        assert A[i] == extract_block(A, M, beta)[delta]
    assert locate(M, (3, 1, 5)) == ((2, 1, 3), (1, 1, 1))


def test_uniform_order1_is_identity():
    assert build_P_M_uniform(UniformParams((3,), (4,))).is_identity()


def test_uniform_second_factor_form():
    mu, b = (2, 3, 1, 2), (3, 2, 2, 1)
    M = UniformParams(mu, b).blocking()
    n = M.shape
    Q2 = P_M_factors(M)[1]
    want = kron_list([np.eye(b[1] * n[2] * n[3]), dense_shuffle(mu[1], b[0]), np.eye(mu[0])])
    assert np.array_equal(perm.to_dense(Q2), want)


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=4)
       .filter(lambda mb: np.prod([m * b for m, b in mb]) <= 1296))
@settings(max_examples=60, deadline=None)
def test_uniform_closed_form_matches_general(mb):
    mu, b = zip(*mb)
    params = UniformParams(mu, b)
    assert build_P_M_uniform(params) == build_P_M(params.blocking())
    assert build_P_M_uniform(params.blocking()) == build_P_M(params.blocking())


def test_uniform_full_blocks_are_identity():
    assert build_P_M_uniform(Blocking.trivial((3, 4, 2))).is_identity()


def test_uniform_rejects_nonuniform():
    with pytest.raises(ValueError):
        build_P_M_uniform(Blocking([[1, 2], [2]]))
    with pytest.raises(BlockingError):
        Blocking.uniform((5,), (2,))


def test_block_unfold_trivial_is_unfold(rng):
    A = rand(rng, (3, 4, 2))
    bu = block_unfold(A, Blocking.trivial(A.shape), [2], [3, 1])
    assert np.array_equal(bu.matrix, unfold(A, [2], [3, 1]).matrix)
    assert np.array_equal(get_block(bu, (1, 1, 1)), bu.matrix)


def test_block_unfold_figure_layout(rng):
    A = rand(rng, FIG_N)
    M = make_blocking(FIG_N, FIG_PARTS)
    bu = block_unfold(A, M, [1], [2, 3])
    assert bu.layout.grid == (3, 8)
    assert bu.layout.row_sizes.tolist() == [2, 3, 4]
    assert bu.layout.col_sizes.tolist() == [6, 4] * 4
    first = get_block(bu, (1, 1, 1))
    assert first.shape == (2, 6)
    assert np.array_equal(first, mode_unfold(extract_block(A, M, (1, 1, 1)), 1).matrix)
    for k in multi_indices(M.b):
        assert np.array_equal(get_block(bu, k), mode_unfold(extract_block(A, M, k), 1).matrix)


def test_block_unfold_order4_multi_indexed_blocks(rng):
    n = (4, 6, 5, 3)
    M = make_blocking(n, ([1, 3], [1, 2, 2, 1], [2, 1, 2], [2, 1]))
    A = rand(rng, n)
    bu = block_unfold(A, M, [1, 3], [2, 4])
    assert bu.layout.grid == (6, 8)
    for k in multi_indices(M.b):
        i1, i2, i3, i4 = k
        mu = i1 + 2 * (i3 - 1)
        tau = i2 + 4 * (i4 - 1)
        assert bu.layout.block_coords(k) == (mu, tau)
        want = unfold_loop(extract_block(A, M, k).array, [1, 3], [2, 4])
        assert np.array_equal(get_block(bu, k), want)


@given(blocked_shapes(max_order=4, max_numel=1024, max_extent=6), st.data())
@settings(max_examples=60, deadline=None)
def test_block_unfold_blocks_are_block_unfoldings(nM, data):
    n, M = nM
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    p = list(data.draw(st.permutations(range(1, len(n) + 1))))
    e = data.draw(st.integers(0, len(n)))
    A = rand(rng, n)
    bu = block_unfold(A, M, p[:e], p[e:])
    parts = [m.tolist() for m in M.parts]
    for (k0, blk) in blocks_of(A.array, parts):
        k = tuple(x + 1 for x in k0)
        assert np.array_equal(get_block(bu, k), unfold_loop(blk, p[:e], p[e:]))
    assert np.array_equal(unblock_unfold(bu), unfold(A, p[:e], p[e:]).matrix)


def test_block_contiguity_in_figure_example():
    from blocktensor.figure import block_map, column_runs, is_contiguous_rectangle
    from blocktensor.core import ivec
    M = make_blocking(FIG_N, FIG_PARTS)
    label = ivec((3, 1, 1), M.b)
    plain = block_map(M, [1], [2, 3], blocked=False)
    blocked = block_map(M, [1], [2, 3], blocked=True)
    assert len(column_runs(plain, label)) >= 2
    assert not is_contiguous_rectangle(plain, label)
    assert is_contiguous_rectangle(blocked, label)
    assert int(np.sum(blocked == label)) == 4 * 6


def test_tracy_singh_single_matrix(rng):
    B = rng.standard_normal((4, 5))
    ts = tracy_singh([B], [[1, 3]], [[2, 3]])
    assert np.array_equal(ts.matrix, B)


def test_tracy_singh_one_block_is_kron(rng):
    B1, B2 = rng.standard_normal((2, 3)), rng.standard_normal((4, 2))
    ts = tracy_singh([B1, B2], [[2], [4]], [[3], [2]])
    assert np.array_equal(ts.matrix, np.kron(B2, B1))


def test_tracy_singh_blocks_and_global_form(rng):
    B1, B2 = rng.standard_normal((4, 4)), rng.standard_normal((4, 4))
    ts = tracy_singh([B1, B2], [[2, 2], [2, 2]], [[2, 2], [2, 2]])
    sub = lambda B, i, j: B[2 * (i - 1):2 * i, 2 * (j - 1):2 * j]  # noqa: E731
    for i in multi_indices((2, 2)):
        for j in multi_indices((2, 2)):
            mu = i[0] + 2 * (i[1] - 1)
            tau = j[0] + 2 * (j[1] - 1)
            rs, cs = ts.layout.slices(mu, tau)
            assert np.array_equal(ts.matrix[rs, cs], np.kron(sub(B2, i[1], j[1]), sub(B1, i[0], j[0])))
    R, C = ts.layout.row_blocking, ts.layout.col_blocking
    PR, PC = perm.to_dense(build_P_M(R)), perm.to_dense(build_P_M(C))
    assert np.allclose(ts.matrix, PR @ np.kron(B2, B1) @ PC.T, rtol=0, atol=1e-15)


def test_block_layout_sizes_match_grid_products():
    M = make_blocking(FIG_N, FIG_PARTS)
    bu = block_unfold(Tensor(np.zeros(360), FIG_N), M, [3, 1], [2])
    assert bu.layout.grid == (4 * 3, 2)
