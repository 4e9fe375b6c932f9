"""Mode permutations of tensors and the shuffles that realize them on vec."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import permutation as perm
from .core import Tensor, as_shape, as_tensor, numel
from .permutation import PermutationVector


def check_mode_permutation(p: Sequence[int], d: int) -> tuple[int, ...]:
    """Validate a 1-based permutation of ``1..d``."""
    p = tuple(int(k) for k in p)
    if sorted(p) != list(range(1, d + 1)):
        raise ValueError(f"{list(p)} is not a permutation of modes 1..{d}")
    return p


def p_transpose(A, p: Sequence[int]) -> Tensor:
    """The ``p``-transpose ``B`` of ``A``: ``B(i(p)) = A(i)``, shape ``n(p)``."""
    A = as_tensor(A)
    p = check_mode_permutation(p, A.order)
    axes = [k - 1 for k in p]
    return Tensor.from_array(np.transpose(A.array, axes))


def transpose_perm(n: Sequence[int], p: Sequence[int]) -> PermutationVector:
    """Vector ``w`` with ``vec(A^<p>) = vec(A)(w)`` for every ``A`` of shape ``n``."""
    n = as_shape(n)
    p = check_mode_permutation(p, len(n))
    labels = Tensor(np.arange(1, numel(n) + 1), n)
    return PermutationVector(p_transpose(labels, p).data.astype(np.int64), check=False)


def middle_swap_perm(N1: int, N2: int, N3: int, N4: int) -> PermutationVector:
    """``I_{N4} (x) Pi_{N3,N2} (x) I_{N1}``: swaps the middle two modes of an order-4 tensor.

    Applied to ``vec(A)`` for ``A`` of shape ``N1 x N2 x N3 x N4`` it yields
    ``vec(A^<[1 3 2 4]>)``.  Adjacent modes of a higher-order tensor can be
    fused into these four groups.
    """
    return perm.kron(perm.identity(N4), perm.perfect_shuffle(N3, N2), perm.identity(N1))


def adjacent_swap_perm(n: Sequence[int], k: int) -> PermutationVector:
    """Shuffle exchanging modes ``k`` and ``k+1`` (1-based) of a shape-``n`` tensor."""
    n = as_shape(n)
    d = len(n)
    if not 1 <= k < d:
        raise ValueError(f"adjacent swap needs 1 <= k < {d}, got k={k}")
    N1 = numel(n[: k - 1])
    N4 = numel(n[k + 1 :])
    return middle_swap_perm(N1, n[k - 1], n[k], N4)


def to_front_perm(n: Sequence[int], k: int) -> PermutationVector:
    """Shuffle moving mode ``k`` to the front: ``p = [k, 1:k-1, k+1:d]``.

    Equals ``I_{N4} (x) Pi_{n_k, N2}`` with ``N2 = n_1...n_{k-1}`` and
    ``N4 = n_{k+1}...n_d``.
    """
    n = as_shape(n)
    d = len(n)
    if not 1 <= k <= d:
        raise ValueError(f"mode k={k} out of range 1..{d}")
    N2 = numel(n[: k - 1])
    N4 = numel(n[k:])
    return perm.kron(perm.identity(N4), perm.perfect_shuffle(n[k - 1], N2))


def transpose_perm_via_swaps(n: Sequence[int], p: Sequence[int]) -> PermutationVector:
    """Build the ``p``-transpose shuffle as a product of adjacent-mode swaps.

    Uses stable left-to-right bubble-sort passes over the current mode order.
    """
    n = as_shape(n)
    p = check_mode_permutation(p, len(n))
    target = {mode: pos for pos, mode in enumerate(p)}
    order = list(range(1, len(n) + 1))
    shape = list(n)
    total = perm.identity(numel(n))
    swapped = True
    while swapped:
        swapped = False
        for k in range(len(order) - 1):
            if target[order[k]] > target[order[k + 1]]:
                # later swaps act after earlier ones
                total = perm.compose(adjacent_swap_perm(shape, k + 1), total)
                order[k], order[k + 1] = order[k + 1], order[k]
                shape[k], shape[k + 1] = shape[k + 1], shape[k]
                swapped = True
    return total
