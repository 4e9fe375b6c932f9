"""Blockings, blocked vec, the vec -> blocked-vec permutation and block unfoldings.

A :class:`Blocking` splits every mode ``k`` of an ``n_1 x ... x n_d`` tensor
into ``b_k`` contiguous ranges of sizes ``m^(k)_1, ..., m^(k)_{b_k}``.  The
blocked vec stacks ``vec`` of each block, taking blocks in vec order of the
block grid.  :func:`build_P_M` assembles the integer-vector permutation that
maps ``vec(A)`` to the blocked vec using only shuffles, Kronecker products,
direct sums and composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from . import permutation as perm
from .core import Tensor, as_shape, as_tensor, ivec, multi_indices, numel
from .errors import BlockingError, ShapeError
from .permutation import PermutationVector
from .unfolding import UnfoldSpec, unfold


class Blocking:
    """Per-mode partition vectors.

    A blocking over zero modes is allowed; it stands for the empty row or
    column side of a degenerate unfolding.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[Sequence[int]]):
        cleaned = []
        for k, m in enumerate(parts, start=1):
            m = np.array(m, dtype=np.int64).reshape(-1)
            if m.size == 0:
                raise BlockingError(f"mode {k} has an empty partition vector")
            if np.any(m < 1):
                raise BlockingError(f"mode {k} partition {m.tolist()} has non-positive sizes")
            m.flags.writeable = False
            cleaned.append(m)
        self.parts = tuple(cleaned)

    @classmethod
    def trivial(cls, n: Sequence[int]) -> "Blocking":
        return cls([[nk] for nk in n])

    @classmethod
    def uniform(cls, n: Sequence[int], mu: Sequence[int]) -> "Blocking":
        parts = []
        for k, (nk, mk) in enumerate(zip(n, mu), start=1):
            if nk % mk:
                raise BlockingError(f"mode {k}: block size {mk} does not divide {nk}")
            parts.append([mk] * (nk // mk))
        return cls(parts)

    @property
    def order(self) -> int:
        return len(self.parts)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(int(m.sum()) for m in self.parts)

    @property
    def b(self) -> tuple[int, ...]:
        """Number of blocks per mode."""
        return tuple(int(m.size) for m in self.parts)

    def lower(self, k: int) -> np.ndarray:
        """First index (1-based) of every block along mode ``k``."""
        m = self.parts[k - 1]
        return np.concatenate(([0], np.cumsum(m)[:-1])) + 1

    def upper(self, k: int) -> np.ndarray:
        """Last index (1-based, inclusive) of every block along mode ``k``."""
        return np.cumsum(self.parts[k - 1])

    def sub(self, modes: Sequence[int]) -> "Blocking":
        """Blocking restricted to the given modes, in the given order."""
        return Blocking([self.parts[k - 1] for k in modes])

    def block_shape(self, i: Sequence[int]) -> tuple[int, ...]:
        check_block_index(self, i)
        return tuple(int(m[ik - 1]) for m, ik in zip(self.parts, i))

    def volumes(self) -> np.ndarray:
        """Volume of every block, listed in vec order of the block grid."""
        vols = np.ones(1, dtype=np.int64)
        for m in self.parts:
            vols = np.kron(m, vols)
        return vols

    def is_uniform(self) -> bool:
        return all(np.all(m == m[0]) for m in self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Blocking):
            return NotImplemented
        return len(self.parts) == len(other.parts) and all(
            np.array_equal(a, b) for a, b in zip(self.parts, other.parts)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Blocking({[m.tolist() for m in self.parts]})"


def make_blocking(n: Sequence[int], parts: Sequence[Sequence[int]]) -> Blocking:
    """Validated blocking for a tensor of shape ``n``.

    >>> M = make_blocking((9, 5, 8), ([2, 3, 4], [3, 2], [2, 2, 2, 2]))
    >>> M.b, M.lower(1).tolist(), M.upper(1).tolist()
    ((3, 2, 4), [1, 3, 6], [2, 5, 9])
    """
    n = as_shape(n)
    if len(parts) != len(n):
        raise BlockingError(f"need one partition vector per mode: got {len(parts)} for {len(n)} modes")
    M = Blocking(parts)
    for k, (nk, m) in enumerate(zip(n, M.parts), start=1):
        if int(m.sum()) != nk:
            raise BlockingError(f"mode {k}: partition {m.tolist()} sums to {int(m.sum())}, not {nk}")
    return M


def check_block_index(M: Blocking, i: Sequence[int]) -> tuple[int, ...]:
    i = tuple(int(x) for x in i)
    if len(i) != M.order:
        raise IndexError(f"block index has {len(i)} entries, blocking has {M.order} modes")
    for k, (ik, bk) in enumerate(zip(i, M.b), start=1):
        if not 1 <= ik <= bk:
            raise IndexError(f"block index {ik} out of range 1..{bk} in mode {k}")
    return i


def _check_fits(A: Tensor, M: Blocking) -> None:
    if M.shape != A.shape:
        raise BlockingError(f"blocking covers shape {M.shape}, tensor has shape {A.shape}")


def vol(M: Blocking, i: Sequence[int]) -> int:
    """Number of entries in block ``i``."""
    return numel(M.block_shape(i))


def extract_block(A, M: Blocking, i: Sequence[int]) -> Tensor:
    """Copy of block ``i``: the index ranges ``lower:upper`` of every mode."""
    A = as_tensor(A)
    _check_fits(A, M)
    i = check_block_index(M, i)
    idx = tuple(
        slice(int(M.lower(k)[ik - 1]) - 1, int(M.upper(k)[ik - 1]))
        for k, ik in enumerate(i, start=1)
    )
    return Tensor.from_array(A.array[idx])


def vec_blocked(A, M: Blocking) -> np.ndarray:
    """Stack ``vec`` of every block, blocks taken in vec order of the grid."""
    A = as_tensor(A)
    _check_fits(A, M)
    return np.concatenate([extract_block(A, M, i).data for i in multi_indices(M.b)])


def locate(M: Blocking, i: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split entry index ``i`` into (block index, offset inside that block)."""
    i = tuple(int(x) for x in i)
    beta, delta = [], []
    for k, ik in enumerate(i, start=1):
        upper = M.upper(k)
        if not 1 <= ik <= upper[-1]:
            raise IndexError(f"index {ik} out of range 1..{upper[-1]} in mode {k}")
        j = int(np.searchsorted(upper, ik))
        beta.append(j + 1)
        delta.append(ik - int(M.lower(k)[j]) + 1)
    return tuple(beta), tuple(delta)


@lru_cache(maxsize=4096)
def _shuffle(q: int, r: int) -> PermutationVector:
    return perm.perfect_shuffle(q, r)


def P_M_factors(M: Blocking) -> list[PermutationVector]:
    """The factors ``[Q_1, Q_2, ..., Q_d]``; the blocked-vec permutation is ``Q_d ... Q_1``.

    ``Q_1`` is the identity and, for ``k > 1``, ``Q_k = I (x) Gamma_k`` where
    ``Gamma_k`` is the direct sum over the blocks ``j`` of mode ``k`` of

        diag_i( Pi[vol_{k-1}(i), m_j] ) * Pi[m_j, n_1...n_{k-1}]

    and ``i`` runs over the leading ``k-1`` block coordinates in vec order.
    """
    n = M.shape
    N = numel(n)
    factors = [perm.identity(N)]
    vols_prev = np.ones(1, dtype=np.int64)
    for k in range(2, M.order + 1):
        vols_prev = np.kron(M.parts[k - 2], vols_prev)
        N_prev = numel(n[: k - 1])
        gammas = []
        for mj in M.parts[k - 1].tolist():
            inner = perm.direct_sum(*(_shuffle(int(v), mj) for v in vols_prev))
            gammas.append(perm.compose(inner, _shuffle(mj, N_prev)))
        Gamma = perm.direct_sum(*gammas)
        factors.append(perm.kron(perm.identity(N // numel(n[:k])), Gamma))
    return factors


def build_P_M(M: Blocking) -> PermutationVector:
    """Permutation with ``apply(P_M, vec(A)) == vec_blocked(A, M)``."""
    if M.order == 0:
        return perm.identity(1)
    factors = P_M_factors(M)
    # P_M = Q_d ... Q_2 Q_1: Q_1 acts first
    return perm.compose_all(*reversed(factors))


@dataclass(frozen=True)
class UniformParams:
    """Uniform block sizes ``mu_k`` and block counts ``b_k`` (so ``n_k = mu_k b_k``)."""

    mu: tuple[int, ...]
    b: tuple[int, ...]

    @classmethod
    def from_blocking(cls, M: Blocking) -> "UniformParams":
        if not M.is_uniform():
            raise ValueError(f"blocking {M!r} is not uniform in every mode")
        return cls(tuple(int(m[0]) for m in M.parts), M.b)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(m * b for m, b in zip(self.mu, self.b))

    def blocking(self) -> Blocking:
        return Blocking([[m] * b for m, b in zip(self.mu, self.b)])


def build_P_M_uniform(params) -> PermutationVector:
    """Closed form of :func:`build_P_M` for uniform blockings.

    ``Q_k = I_{b_k N_d / N_k} (x) Pi[mu_k, B_{k-1}] (x) I_{D_{k-1}}`` with
    ``B_k = b_1...b_k``, ``D_k = mu_1...mu_k`` and ``N_k = n_1...n_k``.
    Accepts :class:`UniformParams` or a uniform :class:`Blocking`.
    """
    if isinstance(params, Blocking):
        params = UniformParams.from_blocking(params)
    mu, b, n = params.mu, params.b, params.n
    d = len(n)
    N = numel(n)
    P = perm.identity(N)
    for k in range(2, d + 1):
        Q = perm.kron(
            perm.identity(b[k - 1] * N // numel(n[:k])),
            _shuffle(mu[k - 1], numel(b[: k - 1])),
            perm.identity(numel(mu[: k - 1])),
        )
        P = perm.compose(Q, P)
    return P


@dataclass(frozen=True)
class BlockLayout:
    """Block grid of a block unfolding.

    Block rows are indexed by multi-indices over the block counts of the row
    modes ``r`` (vec order) and likewise for columns.
    """

    r: tuple[int, ...]
    c: tuple[int, ...]
    row_blocking: Blocking
    col_blocking: Blocking
    row_sizes: np.ndarray
    col_sizes: np.ndarray

    @property
    def grid(self) -> tuple[int, int]:
        """``(B_rows, B_cols)``."""
        return len(self.row_sizes), len(self.col_sizes)

    @property
    def row_offsets(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.row_sizes)))

    @property
    def col_offsets(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.col_sizes)))

    def block_coords(self, k: Sequence[int]) -> tuple[int, int]:
        """Linear 1-based ``(mu, tau)`` of the block holding tensor block ``k``."""
        k = tuple(int(x) for x in k)
        d = len(self.r) + len(self.c)
        if len(k) != d:
            raise IndexError(f"block index has {len(k)} entries, expected {d}")
        kr = tuple(k[m - 1] for m in self.r)
        kc = tuple(k[m - 1] for m in self.c)
        return ivec(kr, self.row_blocking.b), ivec(kc, self.col_blocking.b)

    def slices(self, mu: int, tau: int) -> tuple[slice, slice]:
        ro, co = self.row_offsets, self.col_offsets
        if not (1 <= mu <= len(self.row_sizes) and 1 <= tau <= len(self.col_sizes)):
            raise IndexError(f"block ({mu}, {tau}) outside grid {self.grid}")
        return slice(int(ro[mu - 1]), int(ro[mu])), slice(int(co[tau - 1]), int(co[tau]))


class BlockUnfolding(NamedTuple):
    matrix: np.ndarray
    layout: BlockLayout


def _layout(r, c, R: Blocking, C: Blocking) -> BlockLayout:
    return BlockLayout(tuple(r), tuple(c), R, C, R.volumes(), C.volumes())


def block_unfold(A, M: Blocking, r: Sequence[int], c: Sequence[int]) -> BlockUnfolding:
    """``P_R A_{r x c} P_C^T``: a block matrix whose blocks unfold ``A``'s blocks.

    ``P_R`` and ``P_C`` are the blocked-vec permutations of the row blocking
    (partitions of the ``r`` modes) and column blocking.
    """
    A = as_tensor(A)
    _check_fits(A, M)
    U = unfold(A, r, c)
    spec = U.spec
    R, C = M.sub(spec.r), M.sub(spec.c)
    P_R, P_C = build_P_M(R), build_P_M(C)
    matrix = U.matrix[P_R.index][:, P_C.index]
    matrix.flags.writeable = False
    return BlockUnfolding(matrix, _layout(spec.r, spec.c, R, C))


def get_block(bu: BlockUnfolding, k: Sequence[int]) -> np.ndarray:
    """The block of a block unfolding that holds ``(A_k)_{r x c}``."""
    layout = bu.layout
    full = Blocking(
        [
            (layout.row_blocking.parts[layout.r.index(m)] if m in layout.r
             else layout.col_blocking.parts[layout.c.index(m)])
            for m in range(1, len(layout.r) + len(layout.c) + 1)
        ]
    )
    check_block_index(full, k)
    rs, cs = layout.slices(*layout.block_coords(k))
    return bu.matrix[rs, cs]


def unblock_unfold(bu: BlockUnfolding) -> np.ndarray:
    """Undo the row/column permutations, returning the plain ``r x c`` unfolding."""
    P_R = build_P_M(bu.layout.row_blocking)
    P_C = build_P_M(bu.layout.col_blocking)
    M = perm.apply_transpose(P_R, bu.matrix)
    return perm.apply_transpose(P_C, M.T).T


def tracy_singh(matrices: Sequence, row_parts: Sequence[Sequence[int]],
                col_parts: Sequence[Sequence[int]]) -> BlockUnfolding:
    """Block matrix whose ``(i, j)`` block is ``B_d[i_d, j_d] (x) ... (x) B_1[i_1, j_1]``.

    ``row_parts[l]`` and ``col_parts[l]`` partition the rows and columns of
    ``matrices[l]``.  Block rows are ordered by ``ivec(i, row block counts)``
    and block columns by ``ivec(j, column block counts)``.  The result equals
    ``P_R (B_d (x) ... (x) B_1) P_C^T`` with ``R`` and ``C`` the row and column
    blockings.
    """
    d = len(matrices)
    if d == 0 or len(row_parts) != d or len(col_parts) != d:
        raise ShapeError("need one row partition and one column partition per matrix")
    mats = [np.asarray(B, dtype=np.float64) for B in matrices]
    for ell, B in enumerate(mats, start=1):
        if B.ndim != 2:
            raise ShapeError(f"factor {ell} is not a matrix")
    R = make_blocking([B.shape[0] for B in mats], row_parts)
    C = make_blocking([B.shape[1] for B in mats], col_parts)
    layout = BlockLayout(
        tuple(range(1, 2 * d, 2)), tuple(range(2, 2 * d + 1, 2)), R, C, R.volumes(), C.volumes()
    )
    rlo = [R.lower(k) - 1 for k in range(1, d + 1)]
    rhi = [R.upper(k) for k in range(1, d + 1)]
    clo = [C.lower(k) - 1 for k in range(1, d + 1)]
    chi = [C.upper(k) for k in range(1, d + 1)]
    out = np.empty((int(layout.row_sizes.sum()), int(layout.col_sizes.sum())))
    for mu, i in enumerate(multi_indices(R.b), start=1):
        for tau, j in enumerate(multi_indices(C.b), start=1):
            block = np.ones((1, 1))
            for ell in range(d):
                sub = mats[ell][rlo[ell][i[ell] - 1]:rhi[ell][i[ell] - 1],
                                clo[ell][j[ell] - 1]:chi[ell][j[ell] - 1]]
                block = np.kron(sub, block)
            rs, cs = layout.slices(mu, tau)
            out[rs, cs] = block
    out.flags.writeable = False
    return BlockUnfolding(out, layout)
