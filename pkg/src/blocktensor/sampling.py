"""Random instance generators shared by the verification suite and benchmarks."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .blocking import Blocking
from .contraction import BlockedContractionPlan, ContractionPlan
from .core import Tensor, numel


def random_partition(rng: np.random.Generator, n: int) -> list[int]:
    """Random composition of ``n`` into positive parts (all part counts reachable)."""
    if n == 1:
        return [1]
    cuts = np.flatnonzero(rng.random(n - 1) < rng.random()) + 1
    edges = np.concatenate(([0], cuts, [n]))
    return np.diff(edges).tolist()


def random_shape(rng: np.random.Generator, max_order: int, max_numel: int,
                 max_extent: int = 8, min_order: int = 1) -> tuple[int, ...]:
    while True:
        d = int(rng.integers(min_order, max_order + 1))
        shape = tuple(int(x) for x in rng.integers(1, max_extent + 1, size=d))
        if numel(shape) <= max_numel:
            return shape


def random_blocking(rng: np.random.Generator, n) -> Blocking:
    return Blocking([random_partition(rng, int(nk)) for nk in n])


def random_uniform_blocking(rng: np.random.Generator, max_order: int, max_numel: int) -> Blocking:
    while True:
        d = int(rng.integers(1, max_order + 1))
        mu = rng.integers(1, 5, size=d)
        b = rng.integers(1, 5, size=d)
        if numel((mu * b).tolist()) <= max_numel:
            return Blocking([[int(m)] * int(k) for m, k in zip(mu, b)])


def random_tensor(rng: np.random.Generator, shape) -> Tensor:
    return Tensor(rng.standard_normal(numel(shape)), shape)


def random_mode_perm(rng: np.random.Generator, d: int) -> tuple[int, ...]:
    return tuple(int(x) + 1 for x in rng.permutation(d))


def random_contraction(rng: np.random.Generator, max_f: int = 3, max_g: int = 3,
                       max_l: int = 3, max_extent: int = 4,
                       f: Optional[int] = None, g: Optional[int] = None):
    """Random ``(F, G, BlockedContractionPlan)`` with conformal blockings."""
    f = int(rng.integers(0, max_f + 1)) if f is None else f
    g = int(rng.integers(0, max_g + 1)) if g is None else g
    l = int(rng.integers(1, max_l + 1))
    ext = lambda k: [int(x) for x in rng.integers(1, max_extent + 1, size=k)]  # noqa: E731
    free_f, inner, free_g = ext(f), ext(l), ext(g)
    p = random_mode_perm(rng, f + l)
    q = random_mode_perm(rng, g + l)
    plan = ContractionPlan(p, q, f)
    F_shape = [0] * (f + l)
    for mode, n in zip(plan.r, free_f):
        F_shape[mode - 1] = n
    for mode, n in zip(plan.lam, inner):
        F_shape[mode - 1] = n
    G_shape = [0] * (g + l)
    for mode, n in zip(plan.psi, inner):
        G_shape[mode - 1] = n
    for mode, n in zip(plan.c, free_g):
        G_shape[mode - 1] = n
    inner_parts = [random_partition(rng, n) for n in inner]
    S_parts = [None] * (f + l)
    for mode, n in zip(plan.r, free_f):
        S_parts[mode - 1] = random_partition(rng, n)
    for mode, part in zip(plan.lam, inner_parts):
        S_parts[mode - 1] = part
    T_parts = [None] * (g + l)
    for mode, part in zip(plan.psi, inner_parts):
        T_parts[mode - 1] = part
    for mode, n in zip(plan.c, free_g):
        T_parts[mode - 1] = random_partition(rng, n)
    F = random_tensor(rng, tuple(F_shape))
    G = random_tensor(rng, tuple(G_shape))
    return F, G, BlockedContractionPlan(plan, Blocking(S_parts), Blocking(T_parts))
