"""Dense tensors stored in vec order, multi-index arithmetic and outer products.

Vec order means the first index varies fastest, so the flat data buffer of a
:class:`Tensor` *is* ``vec(A)``.  Multi-indices in the public API are 1-based.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ShapeError

DEFAULT_RTOL = 1e-12


def as_shape(n: Iterable[int]) -> tuple[int, ...]:
    """Validate and normalize a shape vector."""
    shape = tuple(int(k) for k in n)
    if len(shape) == 0:
        raise ShapeError("order-0 tensors are not supported; shape must have at least one mode")
    for k, nk in enumerate(shape, start=1):
        if nk < 1:
            raise ShapeError(f"mode {k} has extent {nk}; extents must be positive")
    return shape


def numel(n: Sequence[int]) -> int:
    """Product of extents; the empty product is 1."""
    return int(np.prod(n, dtype=np.int64)) if len(n) else 1


class Tensor:
    """Immutable dense tensor of float64 entries held in vec order.

    Parameters
    ----------
    data:
        Flat sequence of ``prod(shape)`` scalars in vec order.
    shape:
        Mode extents ``(n_1, ..., n_d)``.  Defaults to ``(len(data),)``.
    blocking:
        Optional :class:`blocktensor.blocking.Blocking` describing how the
        tensor is partitioned.  It is carried along but never interpreted here.

    Examples
    --------
    >>> A = Tensor.from_array(np.array([[1., 2.], [3., 4.]]))
    >>> A.data
    array([1., 3., 2., 4.])
    >>> A[2, 1]
    3.0
    """

    __slots__ = ("shape", "data", "blocking")

    def __init__(self, data, shape: Optional[Sequence[int]] = None, blocking=None):
        flat = np.array(data, dtype=np.float64).reshape(-1)
        shape = as_shape((flat.size,) if shape is None else shape)
        if flat.size != numel(shape):
            raise ShapeError(
                f"data has {flat.size} entries but shape {shape} needs {numel(shape)}"
            )
        if blocking is not None and tuple(blocking.shape) != shape:
            raise ShapeError(f"blocking is for shape {blocking.shape}, tensor has {shape}")
        flat.flags.writeable = False
        self.shape = shape
        self.data = flat
        self.blocking = blocking

    @classmethod
    def from_array(cls, array, blocking=None) -> "Tensor":
        """Wrap an n-dimensional array; ``array[i-1]`` becomes entry ``i``."""
        array = np.asarray(array, dtype=np.float64)
        if array.ndim == 0:
            raise ShapeError("order-0 tensors are not supported")
        return cls(array.ravel(order="F"), array.shape, blocking=blocking)

    @property
    def order(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return self.data.size

    @property
    def array(self) -> np.ndarray:
        """Read-only n-dimensional view (0-based numpy indexing)."""
        return self.data.reshape(self.shape, order="F")

    def with_blocking(self, blocking) -> "Tensor":
        return Tensor(self.data, self.shape, blocking=blocking)

    def __getitem__(self, index) -> float:
        if np.isscalar(index):
            index = (index,)
        return float(self.data[ivec(index, self.shape) - 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self) -> str:
        dims = "x".join(str(k) for k in self.shape)
        return f"Tensor({dims}, data={np.array2string(self.data, threshold=12)})"


def as_tensor(A) -> Tensor:
    """Accept a Tensor or anything numpy can turn into an array."""
    if isinstance(A, Tensor):
        return A
    return Tensor.from_array(A)


def ivec(i: Sequence[int], n: Sequence[int]) -> int:
    """Linear (1-based) position of multi-index ``i`` in vec order of shape ``n``.

    ``ivec(i, n) = i_1 + (i_2 - 1) n_1 + ... + (i_d - 1) n_1 ... n_{d-1}``

    >>> ivec((2, 1, 3), (9, 5, 8))
    92
    """
    if len(i) != len(n):
        raise IndexError(f"multi-index has {len(i)} entries, shape has {len(n)} modes")
    alpha, stride = 1, 1
    for k, (ik, nk) in enumerate(zip(i, n), start=1):
        ik, nk = int(ik), int(nk)
        if not 1 <= ik <= nk:
            raise IndexError(f"index {ik} out of range 1..{nk} in mode {k}")
        alpha += (ik - 1) * stride
        stride *= nk
    return alpha


def ivec_inverse(alpha: int, n: Sequence[int]) -> tuple[int, ...]:
    """Multi-index whose vec position in shape ``n`` is ``alpha``."""
    N = numel(n)
    alpha = int(alpha)
    if not 1 <= alpha <= N:
        raise IndexError(f"linear index {alpha} out of range 1..{N}")
    rest = alpha - 1
    out = []
    for nk in n:
        rest, ik = divmod(rest, int(nk))
        out.append(ik + 1)
    return tuple(out)


def vec(A) -> np.ndarray:
    """Column vector of ``A``'s entries in vec order (read-only)."""
    return as_tensor(A).data


def outer_product(A, B) -> Tensor:
    """``C(i, j) = A(i) * B(j)``; the order of ``C`` is the sum of both orders."""
    A, B = as_tensor(A), as_tensor(B)
    return Tensor.from_array(np.multiply.outer(A.array, B.array))


def rank1(vectors: Sequence) -> Tensor:
    """Outer product ``a1 o a2 o ... o ad`` of a non-empty list of vectors."""
    if len(vectors) == 0:
        raise ValueError("rank1 needs at least one vector")
    factors = []
    for a in vectors:
        a = np.asarray(a.data if isinstance(a, Tensor) else a, dtype=np.float64)
        if a.ndim != 1:
            raise ShapeError("rank1 factors must be vectors")
        factors.append(Tensor(a))
    return reduce(outer_product, factors)


def approx_equal(A, B, tol: float = DEFAULT_RTOL) -> bool:
    """True iff ``max|a - b| <= tol * (1 + max|a|)``; shapes must agree."""
    A, B = as_tensor(A), as_tensor(B)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch: {A.shape} vs {B.shape}")
    if A.size == 0:
        return True
    err = np.max(np.abs(A.data - B.data))
    return bool(err <= tol * (1.0 + np.max(np.abs(A.data))))


def multi_indices(n: Sequence[int]):
    """Iterate all 1-based multi-indices of shape ``n`` in vec order."""
    N = numel(n)
    for alpha in range(1, N + 1):
        yield ivec_inverse(alpha, n)
