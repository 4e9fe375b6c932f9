"""Permutations stored as integer vectors.

A :class:`PermutationVector` ``v`` acts on a vector by gathering:
``apply(v, x) = x(v)``, i.e. ``y[k] = x[v[k]]`` with 1-based entries.  Dense
permutation matrices never appear here; :func:`to_dense` exists for checking.

Composition follows the matrix-product reading.  With ``w = compose(u, p)``::

    apply(w, x) == apply(u, apply(p, x))      # P_w = P_u P_v

For example ``u = [2, 1, 3]`` and ``p = [3, 1, 2]`` give ``w = p(u) = [1, 3, 2]``:
``x = [a, b, c]`` is first gathered by ``p`` into ``[c, a, b]`` and then by
``u`` into ``[a, c, b] = x(w)``.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable

import numpy as np

from .errors import ShapeError


class PermutationVector:
    """A permutation of ``1..n`` held as a read-only int64 array ``v``."""

    __slots__ = ("v",)

    def __init__(self, v: Iterable[int], check: bool = True):
        v = np.array(v, dtype=np.int64).reshape(-1)
        if check and not np.array_equal(np.sort(v), np.arange(1, v.size + 1)):
            raise ValueError(f"not a permutation of 1..{v.size}: {v.tolist()}")
        v.flags.writeable = False
        self.v = v

    @property
    def n(self) -> int:
        return int(self.v.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationVector):
            return NotImplemented
        return np.array_equal(self.v, other.v)

    def __hash__(self) -> int:
        return hash(self.v.tobytes())

    def __repr__(self) -> str:
        return f"PermutationVector({self.v.tolist()})"

    def tolist(self) -> list[int]:
        return self.v.tolist()

    @property
    def index(self) -> np.ndarray:
        """0-based gather index, for fancy indexing numpy arrays."""
        return self.v - 1

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.v, np.arange(1, self.n + 1)))


def identity(n: int) -> PermutationVector:
    return PermutationVector(np.arange(1, int(n) + 1), check=False)


def perfect_shuffle(q: int, r: int) -> PermutationVector:
    """The ``(q, r)`` perfect shuffle ``[1:r:qr, 2:r:qr, ..., r:r:qr]``.

    Applied to ``z`` of length ``s = qr`` it stacks ``z(1:r:s), ..., z(r:r:s)``.

    >>> perfect_shuffle(2, 3).tolist()
    [1, 4, 2, 5, 3, 6]
    """
    q, r = int(q), int(r)
    if q < 1 or r < 1:
        raise ValueError(f"shuffle factors must be positive, got q={q}, r={r}")
    w = np.arange(q * r, dtype=np.int64).reshape(q, r).T.reshape(-1) + 1
    return PermutationVector(w, check=False)


def apply(p: PermutationVector, x) -> np.ndarray:
    """Gather ``x(v)``; ``x`` may be a vector or an array permuted along axis 0."""
    x = np.asarray(x)
    if x.shape[0] != p.n:
        raise ShapeError(f"permutation of size {p.n} applied to length {x.shape[0]}")
    return x[p.index]


def apply_transpose(p: PermutationVector, x) -> np.ndarray:
    """Scatter: the ``y`` with ``y(v) = x``, i.e. ``P^T x``."""
    x = np.asarray(x)
    if x.shape[0] != p.n:
        raise ShapeError(f"permutation of size {p.n} applied to length {x.shape[0]}")
    y = np.empty_like(x)
    y[p.index] = x
    return y


def invert(p: PermutationVector) -> PermutationVector:
    w = np.empty_like(p.v)
    w[p.index] = np.arange(1, p.n + 1)
    return PermutationVector(w, check=False)


def compose(u: PermutationVector, p: PermutationVector) -> PermutationVector:
    """``w = p(u)`` so that ``P_w = P_u P_p``."""
    if u.n != p.n:
        raise ShapeError(f"cannot compose permutations of sizes {u.n} and {p.n}")
    return PermutationVector(p.v[u.index], check=False)


def compose_all(*perms: PermutationVector) -> PermutationVector:
    """``compose_all(A, B, C)`` represents the product ``P_A P_B P_C``."""
    return reduce(compose, perms)


def kron(*perms: PermutationVector) -> PermutationVector:
    """Kronecker product ``P_u (x) P_v (x) ...`` of permutation matrices.

    For two factors of sizes ``n`` and ``m`` the vector is
    ``1_n (x) v + m (u - 1_n) (x) 1_m``.
    """

    def pair(u: PermutationVector, v: PermutationVector) -> PermutationVector:
        m = v.n
        w = np.tile(v.v, u.n) + m * np.repeat(u.v - 1, m)
        return PermutationVector(w, check=False)

    if not perms:
        raise ValueError("kron needs at least one factor")
    return reduce(pair, perms)


def direct_sum(*perms: PermutationVector) -> PermutationVector:
    """Block-diagonal ``diag(P_u, P_v, ...)``; entries of later blocks are offset."""
    if not perms:
        raise ValueError("direct_sum needs at least one block")
    sizes = np.array([p.n for p in perms], dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    w = np.concatenate([p.v + off for p, off in zip(perms, offsets)])
    return PermutationVector(w, check=False)


def to_dense(p: PermutationVector) -> np.ndarray:
    """Dense 0/1 matrix ``P`` with ``P @ x == apply(p, x)``."""
    P = np.zeros((p.n, p.n))
    P[np.arange(p.n), p.index] = 1.0
    return P
