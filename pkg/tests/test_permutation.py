import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blocktensor import ShapeError
from blocktensor import permutation as perm
from blocktensor.permutation import PermutationVector

from .oracles import dense_shuffle

D = perm.to_dense


def random_perm(rng, n):
    return PermutationVector(rng.permutation(n) + 1)


perms = st.integers(1, 8).flatmap(lambda n: st.permutations(range(1, n + 1))).map(PermutationVector)


def test_rejects_non_permutations():
    for bad in ([1, 1], [0, 1], [1, 3], [2]):
        with pytest.raises(ValueError):
            PermutationVector(bad)


def test_perfect_shuffle_values():
    w = perm.perfect_shuffle(2, 3)
    assert w.tolist() == [1, 4, 2, 5, 3, 6]
    assert perm.apply(w, [10, 20, 30, 40, 50, 60]).tolist() == [10, 40, 20, 50, 30, 60]
    assert perm.apply(w, np.arange(1, 7)).tolist() == [1, 4, 2, 5, 3, 6]


@pytest.mark.parametrize("n", [1, 2, 7])
def test_trivial_shuffles_are_identity(n):
    assert perm.perfect_shuffle(1, n).is_identity()
    assert perm.perfect_shuffle(n, 1).is_identity()


@pytest.mark.parametrize("q, r", [(q, r) for q in range(1, 9) for r in range(1, 9)])
def test_perfect_shuffle_matches_dense_definition(q, r):
    assert np.array_equal(D(perm.perfect_shuffle(q, r)), dense_shuffle(q, r))


def test_shuffle_inverse_is_swapped_shuffle():
    assert perm.invert(perm.perfect_shuffle(2, 3)) == perm.perfect_shuffle(3, 2)
    assert perm.perfect_shuffle(3, 2).tolist() == [1, 3, 5, 2, 4, 6]
    assert np.array_equal(dense_shuffle(2, 3).T, dense_shuffle(3, 2))


def test_apply_length_mismatch():
    with pytest.raises(ShapeError):
        perm.apply(perm.identity(3), np.zeros(4))


def test_apply_and_transpose_are_inverse(rng):
    p = random_perm(rng, 9)
    x = rng.standard_normal(9)
    assert np.array_equal(perm.apply(p, perm.apply(perm.invert(p), x)), x)
    assert np.array_equal(perm.apply_transpose(p, perm.apply(p, x)), x)
    assert np.array_equal(perm.apply_transpose(p, x), D(p).T @ x)


def test_apply_selects_entries():
    assert perm.apply(PermutationVector([3, 1, 2]), [10, 20, 30]).tolist() == [30, 10, 20]


@given(perms)
def test_invert_is_involution(p):
    assert perm.invert(perm.invert(p)) == p
    assert np.array_equal(D(perm.invert(p)), D(p).T)


def test_invert_identity():
    assert perm.invert(perm.identity(5)).is_identity()


def test_compose_units_and_inverse(rng):
    p = random_perm(rng, 6)
    assert perm.compose(p, perm.identity(6)) == p
    assert perm.compose(perm.identity(6), p) == p
    assert perm.compose(p, perm.invert(p)).is_identity()


def test_compose_matches_matrix_product(rng):
    u, v = random_perm(rng, 7), random_perm(rng, 7)
    w = perm.compose(u, v)
    assert np.array_equal(D(w), D(u) @ D(v))
    x = rng.standard_normal(7)
    assert np.array_equal(perm.apply(w, x), perm.apply(u, perm.apply(v, x)))


def test_compose_worked_example():
    u, v = PermutationVector([2, 3, 1]), PermutationVector([3, 1, 2])
    # w = v(u)
    assert perm.compose(u, v).tolist() == [1, 2, 3]
    u2 = PermutationVector([2, 1, 3])
    assert perm.compose(u2, v).tolist() == [1, 3, 2]


def test_compose_size_mismatch():
    with pytest.raises(ShapeError):
        perm.compose(perm.identity(2), perm.identity(3))


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(*[st.permutations(range(1, n + 1))] * 3)))
@settings(max_examples=60)
def test_compose_group_laws(vs):
    u, v, w = (PermutationVector(x) for x in vs)
    assert perm.compose(perm.compose(u, v), w) == perm.compose(u, perm.compose(v, w))
    assert perm.invert(perm.compose(u, v)) == perm.compose(perm.invert(v), perm.invert(u))
    assert np.array_equal(D(perm.invert(perm.compose(u, v))), (D(u) @ D(v)).T)


def test_kron_values():
    assert perm.kron(perm.identity(2), perm.identity(3)).is_identity()
    k = perm.kron(perm.identity(2), perm.perfect_shuffle(2, 3))
    assert np.array_equal(D(k), np.kron(np.eye(2), dense_shuffle(2, 3)))


def test_kron_shuffle_identity():
    q, r, s = 2, 3, 2
    lhs = perm.compose(perm.kron(perm.identity(s), perm.perfect_shuffle(r, q)), perm.perfect_shuffle(q, r * s))
    rhs = perm.kron(perm.perfect_shuffle(q, s), perm.identity(r))
    assert lhs == rhs
    dense = np.kron(np.eye(s), dense_shuffle(r, q)) @ dense_shuffle(q, r * s)
    assert np.array_equal(dense, np.kron(dense_shuffle(q, s), np.eye(r)))


@given(perms, perms)
@settings(max_examples=80)
def test_kron_matches_dense(u, v):
    assert np.array_equal(D(perm.kron(u, v)), np.kron(D(u), D(v)))


def test_direct_sum_values():
    assert perm.direct_sum(perm.identity(2), perm.identity(3)).is_identity()
    assert perm.direct_sum(PermutationVector([2, 1]), PermutationVector([1, 3, 2])).tolist() == [2, 1, 3, 5, 4]


@given(st.lists(perms, min_size=1, max_size=4))
@settings(max_examples=80)
def test_direct_sum_is_block_diagonal(ps):
    sizes = [p.n for p in ps]
    want = np.zeros((sum(sizes), sum(sizes)))
    off = 0
    for p in ps:
        want[off : off + p.n, off : off + p.n] = D(p)
        off += p.n
    assert np.array_equal(D(perm.direct_sum(*ps)), want)


def test_to_dense_values(rng):
    assert np.array_equal(D(perm.identity(3)), np.eye(3))
    assert D(PermutationVector([2, 1])).tolist() == [[0, 1], [1, 0]]
    P = D(random_perm(rng, 11))
    assert np.all(P.sum(axis=0) == 1) and np.all(P.sum(axis=1) == 1)


def test_shuffle_swaps_kron_factors(rng):
    for q, r in [(1, 4), (3, 5), (6, 2)]:
        f, g = rng.standard_normal(q), rng.standard_normal(r)
        assert np.array_equal(perm.apply(perm.perfect_shuffle(q, r), np.kron(f, g)), np.kron(g, f))


def test_shuffle_transposes_matrix(rng):
    A = rng.standard_normal((4, 7))
    vecA = A.ravel(order="F")
    assert np.array_equal(perm.apply_transpose(perm.perfect_shuffle(4, 7), vecA), A.T.ravel(order="F"))
    # for a 7 x 4 matrix Z the shuffle itself gives vec(Z^T)
    Z = A.T
    assert np.array_equal(perm.apply(perm.perfect_shuffle(4, 7), Z.ravel(order="F")), A.ravel(order="F"))


def test_block_vector_regroup(rng):
    q, rho = 3, [2, 1, 3]
    r = sum(rho)
    f, g = rng.standard_normal(q), rng.standard_normal(r)
    P = perm.compose(perm.direct_sum(*(perm.perfect_shuffle(x, q) for x in rho)), perm.perfect_shuffle(q, r))
    pieces = np.split(g, np.cumsum(rho)[:-1])
    assert np.array_equal(perm.apply(P, np.kron(f, g)), np.concatenate([np.kron(f, gi) for gi in pieces]))


def test_permutation_vector_is_immutable():
    p = perm.identity(3)
    with pytest.raises(ValueError):
        p.v[0] = 2
