"""Brute-force reference implementations, written independently of the library paths they check."""

import itertools

import numpy as np


def ivec0(i, n):
    """0-based linear offset of a 0-based multi-index, first index fastest."""
    off, stride = 0, 1
    for ik, nk in zip(i, n):
        off += ik * stride
        stride *= nk
    return off


def vec_recursive(a):
    """vec by recursion on the last mode: stack vec(A(..., k)) for k = 1..n_d."""
    a = np.asarray(a)
    if a.ndim == 1:
        return a.copy()
    return np.concatenate([vec_recursive(a[..., k]) for k in range(a.shape[-1])])


def transpose_loop(a, p):
    """B(i(p)) = A(i), one entry at a time (p is 1-based)."""
    a = np.asarray(a)
    b = np.empty(tuple(a.shape[k - 1] for k in p))
    for i in itertools.product(*(range(n) for n in a.shape)):
        b[tuple(i[k - 1] for k in p)] = a[i]
    return b


def unfold_loop(a, r, c):
    a = np.asarray(a)
    nr = [a.shape[k - 1] for k in r]
    nc = [a.shape[k - 1] for k in c]
    out = np.empty((int(np.prod(nr)), int(np.prod(nc))))
    for i in itertools.product(*(range(n) for n in a.shape)):
        out[ivec0([i[k - 1] for k in r], nr), ivec0([i[k - 1] for k in c], nc)] = a[i]
    return out


def blocks_of(a, parts):
    """Yield (block index, block array) in vec order of the block grid (0-based index)."""
    a = np.asarray(a)
    edges = [np.concatenate(([0], np.cumsum(m))) for m in parts]
    grid = [range(len(m)) for m in parts]
    for rev in itertools.product(*reversed(grid)):
        j = rev[::-1]
        sl = tuple(slice(e[jk], e[jk + 1]) for e, jk in zip(edges, j))
        yield j, a[sl]


def vec_blocked_loop(a, parts):
    return np.concatenate([vec_recursive(blk) for _, blk in blocks_of(a, parts)])


def dense_shuffle(q, r):
    """Dense perfect shuffle: rows of I_s taken as [1:r:s, 2:r:s, ..., r:r:s]."""
    s = q * r
    rows = np.concatenate([np.arange(k, s, r) for k in range(r)])
    return np.eye(s)[rows]


def kron_list(mats):
    out = np.ones((1, 1))
    for m in mats:
        out = np.kron(out, m)
    return out


def einsum_contract(F, G, p, q, f):
    """Contraction of F^<p> and G^<q> over the trailing/leading modes with einsum."""
    Fp = np.transpose(F, [k - 1 for k in p])
    Gq = np.transpose(G, [k - 1 for k in q])
    l = len(p) - f
    letters = "abcdefghijklmnopqrstuvwxyz"
    fi, ki, gi = letters[:f], letters[f : f + l], letters[f + l : f + l + Gq.ndim - l]
    return np.einsum(f"{fi}{ki},{ki}{gi}->{fi}{gi}", Fp, Gq)
