"""Tensor contractions and multilinear products.

A contraction pairs the trailing ``l`` modes of ``F^<p>`` with the leading
``l`` modes of ``G^<q>``::

    H(i, j) = sum_k F^<p>(i, k) G^<q>(k, j)

It can be evaluated by nested summation, as one product of unfoldings, or as
a block-matrix product of block unfoldings when ``F`` and ``G`` are blocked
conformally along the contracted modes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from . import permutation as perm
from .blocking import (
    Blocking,
    block_unfold,
    build_P_M,
    check_block_index,
    extract_block,
    make_blocking,
    tracy_singh,
    vec_blocked,
)
from .core import Tensor, as_tensor, multi_indices, numel
from .errors import BlockingError, PlanError, ShapeError
from .transpose import check_mode_permutation, p_transpose
from .unfolding import UnfoldedMatrix, UnfoldSpec, fold, mode_unfold, unfold


@dataclass(frozen=True)
class ContractionPlan:
    """Mode permutations ``p`` (of ``F``) and ``q`` (of ``G``) plus ``f``.

    ``r = p[:f]`` are the free modes of ``F``, ``lam = p[f:]`` its contracted
    modes, ``psi = q[:l]`` the contracted modes of ``G`` and ``c = q[l:]`` its
    free modes.  ``l = len(p) - f`` must be at least 1.
    """

    p: tuple[int, ...]
    q: tuple[int, ...]
    f: int

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(k) for k in self.p))
        object.__setattr__(self, "q", tuple(int(k) for k in self.q))
        check_mode_permutation(self.p, len(self.p))
        check_mode_permutation(self.q, len(self.q))
        if not 0 <= self.f < len(self.p):
            raise PlanError(f"f={self.f} leaves no contracted modes in an order-{len(self.p)} F")
        if self.l > len(self.q):
            raise PlanError(f"{self.l} contracted modes but G has order {len(self.q)}")

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.p) - self.f

    @property
    def g(self) -> int:
        return len(self.q) - self.l

    @property
    def r(self) -> tuple[int, ...]:
        return self.p[: self.f]

    @property
    def lam(self) -> tuple[int, ...]:
        return self.p[self.f :]

    @property
    def psi(self) -> tuple[int, ...]:
        return self.q[: self.l]

    @property
    def c(self) -> tuple[int, ...]:
        return self.q[self.l :]

    def validate(self, F: Tensor, G: Tensor) -> None:
        if F.order != len(self.p):
            raise PlanError(f"p has {len(self.p)} modes but F has order {F.order}")
        if G.order != len(self.q):
            raise PlanError(f"q has {len(self.q)} modes but G has order {G.order}")
        for a, b in zip(self.lam, self.psi):
            if F.shape[a - 1] != G.shape[b - 1]:
                raise PlanError(
                    f"contracted extents differ: F mode {a} has {F.shape[a - 1]}, "
                    f"G mode {b} has {G.shape[b - 1]}"
                )

    def result_shape(self, F: Tensor, G: Tensor) -> tuple[int, ...]:
        shape = tuple(F.shape[k - 1] for k in self.r) + tuple(G.shape[k - 1] for k in self.c)
        # a full inner product has no free modes; it is returned as a length-1 vector
        return shape or (1,)


@dataclass(frozen=True)
class BlockedContractionPlan:
    """A :class:`ContractionPlan` with blockings ``S`` of ``F`` and ``T`` of ``G``."""

    plan: ContractionPlan
    S: Blocking
    T: Blocking

    def validate(self, F: Tensor, G: Tensor) -> None:
        self.plan.validate(F, G)
        if self.S.shape != F.shape:
            raise BlockingError(f"S covers shape {self.S.shape}, F has {F.shape}")
        if self.T.shape != G.shape:
            raise BlockingError(f"T covers shape {self.T.shape}, G has {G.shape}")
        for a, b in zip(self.plan.lam, self.plan.psi):
            sa, tb = self.S.parts[a - 1], self.T.parts[b - 1]
            if not np.array_equal(sa, tb):
                raise BlockingError(
                    f"blockings not conformal: F mode {a} split {sa.tolist()}, "
                    f"G mode {b} split {tb.tolist()}"
                )

    @property
    def R(self) -> Blocking:
        return self.S.sub(self.plan.r)

    @property
    def Lam(self) -> Blocking:
        return self.S.sub(self.plan.lam)

    @property
    def Psi(self) -> Blocking:
        return self.T.sub(self.plan.psi)

    @property
    def C(self) -> Blocking:
        return self.T.sub(self.plan.c)

    def result_blocking(self) -> Blocking:
        parts = list(self.R.parts) + list(self.C.parts)
        return Blocking(parts or [[1]])


def _inputs(F, G, plan: ContractionPlan) -> tuple[Tensor, Tensor]:
    F, G = as_tensor(F), as_tensor(G)
    plan.validate(F, G)
    return F, G


def contract_naive(F, G, plan: ContractionPlan) -> Tensor:
    """Direct nested summation over every free and contracted index."""
    F, G = _inputs(F, G, plan)
    Fp = p_transpose(F, plan.p).array
    Gq = p_transpose(G, plan.q).array
    free_f = Fp.shape[: plan.f]
    free_g = Gq.shape[plan.l :]
    inner = Fp.shape[plan.f :]
    out = np.zeros(free_f + free_g)
    for i in product(*(range(n) for n in free_f)):
        for j in product(*(range(n) for n in free_g)):
            acc = 0.0
            for k in product(*(range(n) for n in inner)):
                acc += Fp[i + k] * Gq[k + j]
            out[i + j] = acc
    return Tensor.from_array(out.reshape(plan.result_shape(F, G)))


def _fold_result(Hm: np.ndarray, plan: ContractionPlan, shape) -> Tensor:
    f = plan.f
    spec = UnfoldSpec(tuple(range(1, f + 1)), tuple(range(f + 1, len(shape) + 1)))
    if not plan.f and not plan.g:
        spec = UnfoldSpec((1,), ())
    return fold(UnfoldedMatrix(Hm, spec, shape))


def contract_unfolded(F, G, plan: ContractionPlan) -> Tensor:
    """``H_{[1:f] x [f+1:f+g]} = F_{r x lam} G_{psi x c}`` as one matrix product."""
    F, G = _inputs(F, G, plan)
    Fm = unfold(F, plan.r, plan.lam).matrix
    Gm = unfold(G, plan.psi, plan.c).matrix
    shape = plan.result_shape(F, G)
    return _fold_result(Fm @ Gm, plan, shape)


def _block_product(Fb, Gb, max_workers: Optional[int] = None) -> np.ndarray:
    """Block matrix product ``H_{mu,tau} = sum_q F_{mu,q} G_{q,tau}`` with ascending ``q``."""
    Fl, Gl = Fb.layout, Gb.layout
    n_mu, n_q = Fl.grid
    n_q2, n_tau = Gl.grid
    if n_q != n_q2 or not np.array_equal(Fl.col_sizes, Gl.row_sizes):
        raise BlockingError("inner block structures of the two factors differ")
    H = np.zeros((Fb.matrix.shape[0], Gb.matrix.shape[1]))
    ro, co = Fl.row_offsets, Gl.col_offsets

    def one(mu: int, tau: int) -> None:
        acc = np.zeros((int(Fl.row_sizes[mu - 1]), int(Gl.col_sizes[tau - 1])))
        for q in range(1, n_q + 1):
            frs, fcs = Fl.slices(mu, q)
            grs, gcs = Gl.slices(q, tau)
            acc += Fb.matrix[frs, fcs] @ Gb.matrix[grs, gcs]
        H[ro[mu - 1]:ro[mu], co[tau - 1]:co[tau]] = acc

    pairs = [(mu, tau) for tau in range(1, n_tau + 1) for mu in range(1, n_mu + 1)]
    if max_workers and max_workers > 1:
        # blocks write disjoint slices of H
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            list(pool.map(lambda mt: one(*mt), pairs))
    else:
        for mu, tau in pairs:
            one(mu, tau)
    return H


def contract_blocked(F, G, bplan: BlockedContractionPlan,
                     max_workers: Optional[int] = None) -> Tensor:
    """``H_{R x C} = F_{R x Lam} G_{Psi x C}`` evaluated block by block.

    The returned tensor carries the blocking inherited from the free modes of
    ``F`` and ``G``.
    """
    F, G = as_tensor(F), as_tensor(G)
    bplan.validate(F, G)
    plan = bplan.plan
    Fb = block_unfold(F, bplan.S, plan.r, plan.lam)
    Gb = block_unfold(G, bplan.T, plan.psi, plan.c)
    HRC = _block_product(Fb, Gb, max_workers)
    P_R, P_C = build_P_M(bplan.R), build_P_M(bplan.C)
    Hrc = perm.apply_transpose(P_R, HRC)
    Hrc = perm.apply_transpose(P_C, Hrc.T).T
    shape = plan.result_shape(F, G)
    return _fold_result(Hrc, plan, shape).with_blocking(bplan.result_blocking())


def contract_block_recipe(F, G, bplan: BlockedContractionPlan, k: Sequence[int]) -> np.ndarray:
    """Unfolding ``(H_k)_{[1:f] x [f+1:f+g]}`` of one block of ``H``, from subtensor blocks.

    Sums ``(F_{i(q)})_{r x lam} (G_{j(q)})_{psi x c}`` over the block
    multi-index ``q`` of the contracted modes, where ``i(q)`` places ``k``'s
    first ``f`` entries on ``r`` and ``q`` on ``lam``, and ``j(q)`` places
    ``q`` on ``psi`` and ``k``'s remaining entries on ``c``.
    """
    F, G = as_tensor(F), as_tensor(G)
    bplan.validate(F, G)
    plan = bplan.plan
    k = check_block_index(bplan.result_blocking(), k)
    if not plan.f and not plan.g:
        k = ()
    kr, kc = k[: plan.f], k[plan.f :]
    acc = None
    for q in multi_indices(bplan.Lam.b):
        i = [0] * F.order
        for mode, x in zip(plan.r, kr):
            i[mode - 1] = x
        for mode, x in zip(plan.lam, q):
            i[mode - 1] = x
        j = [0] * G.order
        for mode, x in zip(plan.psi, q):
            j[mode - 1] = x
        for mode, x in zip(plan.c, kc):
            j[mode - 1] = x
        Fi = unfold(extract_block(F, bplan.S, i), plan.r, plan.lam).matrix
        Gj = unfold(extract_block(G, bplan.T, j), plan.psi, plan.c).matrix
        term = Fi @ Gj
        acc = term if acc is None else acc + term
    return acc


# -- multilinear products -------------------------------------------------


def _check_factors(A: Tensor, Bs: Sequence) -> list[np.ndarray]:
    if len(Bs) != A.order:
        raise ShapeError(f"need {A.order} matrices, got {len(Bs)}")
    mats = []
    for k, (B, nk) in enumerate(zip(Bs, A.shape), start=1):
        B = np.asarray(B, dtype=np.float64)
        if B.ndim != 2 or B.shape[1] != nk:
            raise ShapeError(f"matrix for mode {k} must have {nk} columns, got shape {B.shape}")
        mats.append(B)
    return mats


def multilinear_naive(A, Bs: Sequence) -> Tensor:
    """``C(i) = sum_k A(k) B1(i_1, k_1) ... Bd(i_d, k_d)`` by direct summation."""
    A = as_tensor(A)
    mats = _check_factors(A, Bs)
    a = A.array
    q = tuple(B.shape[0] for B in mats)
    out = np.zeros(q)
    ks = list(product(*(range(n) for n in A.shape)))
    for i in product(*(range(n) for n in q)):
        acc = 0.0
        for k in ks:
            term = a[k]
            for ell, B in enumerate(mats):
                term *= B[i[ell], k[ell]]
            acc += term
        out[i] = acc
    return Tensor.from_array(out)


def kron_chain(mats: Sequence[np.ndarray]) -> np.ndarray:
    """``B_d (x) ... (x) B_1`` for ``mats = [B_1, ..., B_d]``."""
    out = np.ones((1, 1))
    for B in mats:
        out = np.kron(B, out)
    return out


def multilinear_kron(A, Bs: Sequence) -> Tensor:
    """``vec(C) = (B_d (x) ... (x) B_1) vec(A)``."""
    A = as_tensor(A)
    mats = _check_factors(A, Bs)
    q = tuple(B.shape[0] for B in mats)
    return Tensor(kron_chain(mats) @ A.data, q)


def mode_product(A, B, k: int) -> Tensor:
    """Mode-``k`` product: ``A_(k) <- B A_(k)``."""
    A = as_tensor(A)
    B = np.asarray(B, dtype=np.float64)
    if B.ndim != 2 or B.shape[1] != A.shape[k - 1]:
        raise ShapeError(f"matrix for mode {k} must have {A.shape[k - 1]} columns")
    U = mode_unfold(A, k)
    shape = A.shape[: k - 1] + (B.shape[0],) + A.shape[k:]
    return fold(UnfoldedMatrix(B @ U.matrix, U.spec, shape))


def multilinear_mode_products(A, Bs: Sequence) -> Tensor:
    """Apply the mode-``i`` products for ``i = 1, ..., d`` in turn."""
    A = as_tensor(A)
    mats = _check_factors(A, Bs)
    for k, B in enumerate(mats, start=1):
        A = mode_product(A, B, k)
    return A


def multilinear_blocked(A, Bs: Sequence, row_parts: Sequence[Sequence[int]],
                        M_A: Blocking) -> Tensor:
    """``vec_R(C) = B_{R x C} vec_C(A)`` with the Tracy-Singh block matrix ``B_{R x C}``.

    ``row_parts[k]`` partitions the rows of ``Bs[k]``; the columns of
    ``Bs[k]`` are partitioned like mode ``k`` of ``A`` (``M_A``).  The result
    carries the row partitions as its blocking.
    """
    A = as_tensor(A)
    mats = _check_factors(A, Bs)
    if M_A.shape != A.shape:
        raise BlockingError(f"blocking covers shape {M_A.shape}, A has shape {A.shape}")
    TS = tracy_singh(mats, row_parts, M_A.parts)
    y = TS.matrix @ vec_blocked(A, M_A)
    R = TS.layout.row_blocking
    return Tensor(perm.apply_transpose(build_P_M(R), y), R.shape, blocking=R)


def blocked_mode_product(A, B, k: int, row_parts: Sequence[int], M_A: Blocking) -> Tensor:
    """One blocked update ``A_{J x C} <- B A_{I x C}`` along mode ``k``.

    ``I`` is ``M_A``'s split of mode ``k`` (which also splits ``B``'s columns),
    ``J`` is ``row_parts`` (splitting ``B``'s rows) and ``C`` is ``M_A`` on the
    remaining modes.  Returns the new tensor blocked with ``J`` in mode ``k``.
    """
    A = as_tensor(A)
    d = A.order
    B = np.asarray(B, dtype=np.float64)
    if B.ndim != 2 or B.shape[1] != A.shape[k - 1]:
        raise ShapeError(f"matrix for mode {k} must have {A.shape[k - 1]} columns")
    others = [m for m in range(1, d + 1) if m != k]
    J = make_blocking((B.shape[0],), [row_parts])
    Ab = block_unfold(A, M_A, [k], others)
    I = M_A.parts[k - 1]
    Bb = tracy_singh([B], [J.parts[0]], [I])
    H = _block_product(Bb, Ab)
    new_parts = list(M_A.parts)
    new_parts[k - 1] = J.parts[0]
    new_M = Blocking(new_parts)
    C = new_M.sub(others)
    Hrc = perm.apply_transpose(build_P_M(C), H.T).T
    shape = A.shape[: k - 1] + (B.shape[0],) + A.shape[k:]
    out = fold(UnfoldedMatrix(Hrc, UnfoldSpec((k,), tuple(others)), shape))
    return out.with_blocking(new_M)


def multilinear_blocked_sequential(A, Bs: Sequence, row_parts: Sequence[Sequence[int]],
                                   M_A: Blocking) -> Tensor:
    """Multilinear product as ``d`` blocked mode updates carried out in turn."""
    A = as_tensor(A)
    mats = _check_factors(A, Bs)
    M = M_A
    for k, (B, J) in enumerate(zip(mats, row_parts), start=1):
        A = blocked_mode_product(A, B, k, J, M)
        M = A.blocking
    return A
