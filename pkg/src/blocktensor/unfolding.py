"""General ``r x c`` unfoldings, modal unfoldings and folding back.

The ``r x c`` unfolding of ``A`` is the matrix whose ``(alpha, beta)`` entry is
``A^<p>(i, j)`` with ``p = [r c]``, ``alpha = ivec(i, n(r))`` and
``beta = ivec(j, n(c))``.  Either mode list may be empty: ``c = []`` gives
``vec(A)`` as an ``N x 1`` column and ``r = []`` gives ``vec(A)^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .core import Tensor, as_tensor, numel
from .errors import ShapeError
from .transpose import p_transpose


class UnfoldSpec(NamedTuple):
    """Row modes ``r`` and column modes ``c`` (1-based)."""

    r: tuple[int, ...]
    c: tuple[int, ...]

    @classmethod
    def make(cls, r: Sequence[int], c: Sequence[int], d: int) -> "UnfoldSpec":
        r = tuple(int(k) for k in r)
        c = tuple(int(k) for k in c)
        modes = r + c
        seen = set(modes)
        missing = sorted(set(range(1, d + 1)) - seen)
        dups = sorted({k for k in modes if modes.count(k) > 1})
        extra = sorted(k for k in seen if not 1 <= k <= d)
        if missing or dups or extra:
            raise ValueError(
                f"[r c] = {list(modes)} is not a permutation of 1..{d}"
                f" (missing {missing}, duplicated {dups}, out of range {extra})"
            )
        return cls(r, c)

    @property
    def p(self) -> tuple[int, ...]:
        return self.r + self.c

    @property
    def e(self) -> int:
        return len(self.r)


@dataclass(frozen=True)
class UnfoldedMatrix:
    """A materialized unfolding together with where it came from."""

    matrix: np.ndarray
    spec: UnfoldSpec
    source_shape: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def unfold(A, r: Sequence[int], c: Sequence[int]) -> UnfoldedMatrix:
    """``r x c`` unfolding of ``A``.

    >>> A = Tensor(np.arange(1., 9.), (2, 2, 2))
    >>> unfold(A, [2], [3, 1]).matrix
    array([[1., 5., 2., 6.],
           [3., 7., 4., 8.]])
    """
    A = as_tensor(A)
    spec = UnfoldSpec.make(r, c, A.order)
    rows = numel([A.shape[k - 1] for k in spec.r])
    cols = numel([A.shape[k - 1] for k in spec.c])
    B = p_transpose(A, spec.p)
    M = B.data.reshape((rows, cols), order="F").copy()
    M.flags.writeable = False
    return UnfoldedMatrix(M, spec, A.shape)


def mode_unfold(A, k: int) -> UnfoldedMatrix:
    """Mode-``k`` unfolding: ``r = [k]``, ``c = [1:k-1, k+1:d]``.  Columns are mode-``k`` fibers."""
    A = as_tensor(A)
    d = A.order
    if not 1 <= k <= d:
        raise ValueError(f"mode k={k} out of range 1..{d}")
    others = [m for m in range(1, d + 1) if m != k]
    return unfold(A, [k], others)


def fold(M: UnfoldedMatrix) -> Tensor:
    """Inverse of :func:`unfold`."""
    spec, n = M.spec, M.source_shape
    rows = numel([n[k - 1] for k in spec.r])
    cols = numel([n[k - 1] for k in spec.c])
    matrix = np.asarray(M.matrix)
    if matrix.shape != (rows, cols):
        raise ShapeError(f"matrix is {matrix.shape}, spec and shape need {(rows, cols)}")
    permuted_shape = tuple(n[k - 1] for k in spec.p)
    B = Tensor(matrix.ravel(order="F"), permuted_shape)
    inverse = [0] * len(spec.p)
    for pos, mode in enumerate(spec.p, start=1):
        inverse[mode - 1] = pos
    return p_transpose(B, inverse)


def unfold_row(A, r: Sequence[int], c: Sequence[int], i: Sequence[int]) -> np.ndarray:
    """Row ``ivec(i, n(r))`` of the ``r x c`` unfolding, i.e. ``vec`` of the subtensor with ``r``-modes fixed at ``i``."""
    A = as_tensor(A)
    spec = UnfoldSpec.make(r, c, A.order)
    i = tuple(int(x) for x in i)
    if len(i) != len(spec.r):
        raise IndexError(f"row multi-index needs {len(spec.r)} entries, got {len(i)}")
    for mode, ik in zip(spec.r, i):
        if not 1 <= ik <= A.shape[mode - 1]:
            raise IndexError(f"index {ik} out of range 1..{A.shape[mode - 1]} in mode {mode}")
    B = p_transpose(A, spec.p).array
    sub = B[tuple(ik - 1 for ik in i)]
    return np.asarray(sub).ravel(order="F")


def unfold_col(A, r: Sequence[int], c: Sequence[int], j: Sequence[int]) -> np.ndarray:
    """Column ``ivec(j, n(c))`` of the ``r x c`` unfolding."""
    A = as_tensor(A)
    spec = UnfoldSpec.make(r, c, A.order)
    j = tuple(int(x) for x in j)
    if len(j) != len(spec.c):
        raise IndexError(f"column multi-index needs {len(spec.c)} entries, got {len(j)}")
    for mode, jk in zip(spec.c, j):
        if not 1 <= jk <= A.shape[mode - 1]:
            raise IndexError(f"index {jk} out of range 1..{A.shape[mode - 1]} in mode {mode}")
    B = p_transpose(A, spec.p).array
    sub = B[(slice(None),) * spec.e + tuple(jk - 1 for jk in j)]
    return np.asarray(sub).ravel(order="F")
