"""ASCII block maps: which tensor block every cell of an unfolding came from."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .blocking import Blocking, block_unfold, locate
from .core import Tensor, ivec, multi_indices
from .unfolding import unfold


def _label_tensor(M: Blocking) -> Tensor:
    """Tensor whose entry ``i`` is the linear index of the block containing ``i``."""
    labels = np.empty(int(np.prod(M.shape)), dtype=np.float64)
    for alpha, i in enumerate(multi_indices(M.shape)):
        beta, _ = locate(M, i)
        labels[alpha] = ivec(beta, M.b)
    return Tensor(labels, M.shape)


def block_map(M: Blocking, r: Sequence[int], c: Sequence[int], blocked: bool) -> np.ndarray:
    """Integer matrix of block labels laid out like the ``r x c`` (block) unfolding."""
    labels = _label_tensor(M)
    if blocked:
        mat = block_unfold(labels, M, r, c).matrix
    else:
        mat = unfold(labels, r, c).matrix
    return mat.astype(np.int64)


def column_runs(bmap: np.ndarray, label: int) -> list[tuple[int, int]]:
    """Maximal runs ``(first, last)`` of 1-based columns that contain ``label``."""
    cols = np.flatnonzero(np.any(bmap == label, axis=0)) + 1
    runs: list[tuple[int, int]] = []
    for col in cols.tolist():
        if runs and runs[-1][1] == col - 1:
            runs[-1] = (runs[-1][0], col)
        else:
            runs.append((col, col))
    return runs


def row_runs(bmap: np.ndarray, label: int) -> list[tuple[int, int]]:
    return column_runs(bmap.T, label)


def is_contiguous_rectangle(bmap: np.ndarray, label: int) -> bool:
    """True iff the cells carrying ``label`` fill exactly one rectangle."""
    rows, cols = row_runs(bmap, label), column_runs(bmap, label)
    if len(rows) != 1 or len(cols) != 1:
        return False
    (r0, r1), (c0, c1) = rows[0], cols[0]
    return bool(np.all(bmap[r0 - 1 : r1, c0 - 1 : c1] == label))


def render(bmap: np.ndarray, M: Blocking, row_sizes: Optional[Sequence[int]] = None,
           col_sizes: Optional[Sequence[int]] = None) -> str:
    """Text grid with each cell labeled by its block multi-index.

    Passing block row/column sizes draws ``|`` and ``-`` separators between
    block rows and columns.
    """
    sep = "," if max(M.b) > 9 else ""
    names = {ivec(k, M.b): sep.join(str(x) for x in k) for k in multi_indices(M.b)}
    width = max(len(s) for s in names.values())
    col_breaks = set(np.cumsum(col_sizes)[:-1].tolist()) if col_sizes is not None else set()
    row_breaks = set(np.cumsum(row_sizes)[:-1].tolist()) if row_sizes is not None else set()
    lines = []
    for i, row in enumerate(bmap):
        if i in row_breaks:
            lines.append("-" * len(lines[-1]))
        cells = []
        for j, lab in enumerate(row.tolist()):
            if j in col_breaks:
                cells.append("|")
            cells.append(names[lab].rjust(width))
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def figure(A: Tensor, k: int, blocked: bool) -> str:
    """Block map of the mode-``k`` (block) unfolding of a blocked tensor."""
    M = A.blocking
    if M is None:
        raise ValueError("tensor has no blocking lines")
    d = A.order
    c = [m for m in range(1, d + 1) if m != k]
    bmap = block_map(M, [k], c, blocked)
    kind = "block unfolding" if blocked else "unfolding"
    header = f"# mode-{k} {kind}, {bmap.shape[0]}x{bmap.shape[1]}, blocks {'x'.join(map(str, M.b))}\n"
    if blocked:
        layout = block_unfold(_label_tensor(M), M, [k], c).layout
        body = render(bmap, M, layout.row_sizes, layout.col_sizes)
        header += "rows: " + " ".join(map(str, layout.row_sizes.tolist())) + "\n"
        header += "cols: " + " ".join(map(str, layout.col_sizes.tolist())) + "\n"
    else:
        body = render(bmap, M)
    return header + body

