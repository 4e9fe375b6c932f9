"""Plain-text tensor files.

Layout::

    dims: 9 5 8
    blocking 1: 2 3 4        # optional, one line per mode
    blocking 2: 3 2
    blocking 3: 2 2 2 2
    <N whitespace-separated scalars in vec order>

Scalars are written with ``repr`` so a write/read round trip is exact.
"""

from __future__ import annotations

import io
import os
from typing import TextIO, Union

import numpy as np

from .blocking import make_blocking
from .core import Tensor, as_shape, numel
from .errors import BlockingError, ShapeError, TensorFormatError

PathOrFile = Union[str, os.PathLike, TextIO]


def loads(text: str) -> Tensor:
    lines = text.splitlines()
    pos = 0
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos == len(lines) or not lines[pos].strip().startswith("dims:"):
        raise TensorFormatError("first line must be 'dims: n1 n2 ... nd'")
    try:
        shape = as_shape(int(tok) for tok in lines[pos].split(":", 1)[1].split())
    except (ValueError, ShapeError) as exc:
        raise TensorFormatError(f"bad dims line: {lines[pos]!r} ({exc})") from None
    pos += 1
    parts: dict[int, list[int]] = {}
    while pos < len(lines) and (not lines[pos].strip() or lines[pos].lstrip().startswith("blocking")):
        line = lines[pos].strip()
        pos += 1
        if not line:
            continue
        head, _, body = line.partition(":")
        try:
            k = int(head.split()[1])
            parts[k] = [int(tok) for tok in body.split()]
        except (IndexError, ValueError):
            raise TensorFormatError(f"bad blocking line: {line!r}") from None
    tokens = " ".join(lines[pos:]).split()
    try:
        data = np.array([float(tok) for tok in tokens])
    except ValueError as exc:
        raise TensorFormatError(f"bad scalar: {exc}") from None
    if data.size != numel(shape):
        raise TensorFormatError(f"dims {shape} need {numel(shape)} scalars, found {data.size}")
    blocking = None
    if parts:
        if sorted(parts) != list(range(1, len(shape) + 1)):
            raise TensorFormatError(
                f"blocking lines must cover modes 1..{len(shape)}, got {sorted(parts)}"
            )
        try:
            blocking = make_blocking(shape, [parts[k] for k in range(1, len(shape) + 1)])
        except BlockingError as exc:
            raise TensorFormatError(str(exc)) from None
    return Tensor(data, shape, blocking=blocking)


def dumps(A: Tensor, per_line: int = 8) -> str:
    out = io.StringIO()
    out.write("dims: " + " ".join(str(n) for n in A.shape) + "\n")
    if A.blocking is not None:
        for k, m in enumerate(A.blocking.parts, start=1):
            out.write(f"blocking {k}: " + " ".join(str(int(x)) for x in m) + "\n")
    vals = [repr(float(x)) for x in A.data]
    for s in range(0, len(vals), per_line):
        out.write(" ".join(vals[s : s + per_line]) + "\n")
    return out.getvalue()


def read_tensor(src: PathOrFile) -> Tensor:
    if hasattr(src, "read"):
        return loads(src.read())
    with open(src) as fh:
        return loads(fh.read())


def write_tensor(A: Tensor, dst: PathOrFile) -> None:
    text = dumps(A)
    if hasattr(dst, "write"):
        dst.write(text)
    else:
        with open(dst, "w") as fh:
            fh.write(text)


def format_matrix(M: np.ndarray) -> str:
    """One line of ``repr`` scalars per matrix row."""
    return "".join(" ".join(repr(float(x)) for x in row) + "\n" for row in np.atleast_2d(M))
