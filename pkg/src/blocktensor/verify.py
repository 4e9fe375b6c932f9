"""Randomized self-check suite behind ``blocktensor verify``.

Every check draws instances from one seeded generator, so a given seed always
produces the same report.  Dense permutation matrices and brute-force loops
serve as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import permutation as perm
from .blocking import (
    Blocking,
    block_unfold,
    build_P_M,
    build_P_M_uniform,
    extract_block,
    get_block,
    vec_blocked,
)
from .contraction import (
    contract_block_recipe,
    contract_blocked,
    contract_naive,
    contract_unfolded,
    kron_chain,
    multilinear_blocked,
    multilinear_kron,
    multilinear_mode_products,
    multilinear_naive,
)
from .core import Tensor, approx_equal, multi_indices, numel, outer_product, rank1
from .sampling import (
    random_blocking,
    random_contraction,
    random_mode_perm,
    random_partition,
    random_shape,
    random_tensor,
    random_uniform_blocking,
)
from .transpose import (
    adjacent_swap_perm,
    middle_swap_perm,
    p_transpose,
    to_front_perm,
    transpose_perm_via_swaps,
)
from .unfolding import unfold


@dataclass
class CheckResult:
    name: str
    instances: int = 0
    failures: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.instances > 0

    def record(self, passed: bool, note: str = "") -> None:
        self.instances += 1
        if not passed:
            self.failures += 1
            if note and len(self.notes) < 3:
                self.notes.append(note)


def _rand_perm(rng, n) -> perm.PermutationVector:
    return perm.PermutationVector(rng.permutation(n) + 1)


def check_shuffles(rng, count: int) -> CheckResult:
    res = CheckResult("perfect shuffles: transpose, f(x)g swap, block-vector regroup")
    for _ in range(count):
        q, r = (int(x) for x in rng.integers(1, 9, size=2))
        A = rng.standard_normal((q, r))
        ok = np.array_equal(perm.to_dense(perm.invert(perm.perfect_shuffle(q, r))) @ A.ravel("F"),
                            A.T.ravel("F"))
        f, g = rng.standard_normal(q), rng.standard_normal(r)
        ok &= np.array_equal(perm.apply(perm.perfect_shuffle(q, r), np.kron(f, g)), np.kron(g, f))
        rho = random_partition(rng, r)
        regroup = perm.compose(perm.direct_sum(*(perm.perfect_shuffle(x, q) for x in rho)),
                               perm.perfect_shuffle(q, r))
        pieces = np.split(g, np.cumsum(rho)[:-1])
        want = np.concatenate([np.kron(f, gi) for gi in pieces])
        ok &= np.array_equal(perm.to_dense(regroup) @ np.kron(f, g), want)
        res.record(bool(ok), f"q={q} r={r}")
    return res


def check_permutation_facts(rng, count: int) -> CheckResult:
    res = CheckResult("permutation vectors: shuffle, compose, kron, direct sum")
    D = perm.to_dense
    for _ in range(count):
        q, r = (int(x) for x in rng.integers(1, 9, size=2))
        n, m = (int(x) for x in rng.integers(1, 9, size=2))
        S = D(perm.perfect_shuffle(q, r))
        z = np.arange(q * r, dtype=float)
        ok = np.array_equal(S @ z, np.concatenate([z[k::r] for k in range(r)]))
        u, v = _rand_perm(rng, n), _rand_perm(rng, n)
        ok &= np.array_equal(D(perm.compose(u, v)), D(u) @ D(v))
        w = _rand_perm(rng, m)
        ok &= np.array_equal(D(perm.kron(u, w)), np.kron(D(u), D(w)))
        ds = np.zeros((n + m, n + m))
        ds[:n, :n], ds[n:, n:] = D(u), D(w)
        ok &= np.array_equal(D(perm.direct_sum(u, w)), ds)
        res.record(bool(ok), f"n={n} m={m}")
    return res


def check_transpose_shuffles(rng, count: int) -> CheckResult:
    res = CheckResult("mode-transposition shuffles vs explicit transpose")
    for _ in range(count):
        N = tuple(int(x) for x in rng.integers(1, 5, size=4))
        A = random_tensor(rng, N)
        ok = np.array_equal(perm.apply(middle_swap_perm(*N), A.data), p_transpose(A, [1, 3, 2, 4]).data)
        n = random_shape(rng, 5, 512, max_extent=5, min_order=2)
        B = random_tensor(rng, n)
        d = len(n)
        k = int(rng.integers(1, d))
        swap = [*range(1, k), k + 1, k, *range(k + 2, d + 1)]
        ok &= np.array_equal(perm.apply(adjacent_swap_perm(n, k), B.data), p_transpose(B, swap).data)
        k = int(rng.integers(1, d + 1))
        front = [k, *range(1, k), *range(k + 1, d + 1)]
        ok &= np.array_equal(perm.apply(to_front_perm(n, k), B.data), p_transpose(B, front).data)
        p = random_mode_perm(rng, d)
        ok &= np.array_equal(perm.apply(transpose_perm_via_swaps(n, p), B.data), p_transpose(B, p).data)
        res.record(bool(ok), f"n={n}")
    return res


def check_rank1(rng, count: int) -> CheckResult:
    res = CheckResult("rank-1 tensors: vec, transpose, unfolding, Kronecker unfolding")
    for _ in range(count):
        n = random_shape(rng, 4, 256, max_extent=4, min_order=2)
        vecs = [rng.standard_normal(k) for k in n]
        A = rank1(vecs)
        kr = np.ones(1)
        for a in vecs:
            kr = np.kron(a, kr)
        ok = np.allclose(A.data, kr, rtol=1e-12, atol=1e-12)
        d = len(n)
        p = random_mode_perm(rng, d)
        e = int(rng.integers(0, d + 1))
        r, c = p[:e], p[e:]
        left = rank1([vecs[k - 1] for k in r]).data if r else np.ones(1)
        right = rank1([vecs[k - 1] for k in c]).data if c else np.ones(1)
        ok &= np.allclose(unfold(A, r, c).matrix, np.outer(left, right), rtol=1e-12, atol=1e-12)
        ok &= approx_equal(p_transpose(A, p), rank1([vecs[k - 1] for k in p]))
        dd = int(rng.integers(1, 4))
        Bs = [rng.standard_normal(tuple(rng.integers(1, 4, size=2))) for _ in range(dd)]
        T = Tensor.from_array(Bs[0])
        for B in Bs[1:]:
            T = outer_product(T, Tensor.from_array(B))
        U = unfold(T, range(1, 2 * dd, 2), range(2, 2 * dd + 1, 2)).matrix
        ok &= np.allclose(U, kron_chain(Bs), rtol=1e-12, atol=1e-12)
        res.record(bool(ok), f"n={n}")
    return res


def check_blocked_vec(rng, count: int, build_pm: Callable = build_P_M) -> CheckResult:
    res = CheckResult("vec -> blocked vec permutation")
    for _ in range(count):
        n = random_shape(rng, 5, 4096)
        M = random_blocking(rng, n)
        A = random_tensor(rng, n)
        got = perm.apply(build_pm(M), A.data)
        res.record(np.array_equal(got, vec_blocked(A, M)), f"{M!r}")
    return res


def check_uniform(rng, count: int, build_pm: Callable = build_P_M) -> CheckResult:
    res = CheckResult("uniform-blocking closed form vs general permutation")
    for _ in range(count):
        M = random_uniform_blocking(rng, 4, 1296)
        res.record(build_P_M_uniform(M) == build_pm(M), f"{M!r}")
    return res


def check_block_unfold(rng, count: int) -> CheckResult:
    res = CheckResult("block unfolding blocks are unfoldings of blocks")
    for _ in range(count):
        n = random_shape(rng, 4, 1024, max_extent=6)
        M = random_blocking(rng, n)
        A = random_tensor(rng, n)
        p = random_mode_perm(rng, len(n))
        e = int(rng.integers(0, len(n) + 1))
        bu = block_unfold(A, M, p[:e], p[e:])
        ok = all(
            np.array_equal(get_block(bu, k), unfold(extract_block(A, M, k), p[:e], p[e:]).matrix)
            for k in multi_indices(M.b)
        )
        res.record(ok, f"{M!r} r={p[:e]}")
    return res


def check_contractions(rng, count: int) -> list[CheckResult]:
    mm = CheckResult("contraction as one matrix product vs nested sums")
    blk = CheckResult("blocked contraction vs nested sums")
    rec = CheckResult("per-block contraction recipe vs blocked product")
    for _ in range(count):
        F, G, bplan = random_contraction(rng)
        H = contract_naive(F, G, bplan.plan)
        mm.record(approx_equal(H, contract_unfolded(F, G, bplan.plan)))
        Hb = contract_blocked(F, G, bplan)
        blk.record(approx_equal(H, Hb) and Hb.blocking == bplan.result_blocking())
        f = bplan.plan.f
        HM = Hb.blocking
        ok = True
        for k in multi_indices(HM.b):
            want = unfold(extract_block(Hb, HM, k), range(1, f + 1), range(f + 1, Hb.order + 1))
            if bplan.plan.f == 0 and bplan.plan.g == 0:
                want = unfold(extract_block(Hb, HM, k), [1], [])
            got = contract_block_recipe(F, G, bplan, k)
            ok &= approx_equal(Tensor.from_array(got), Tensor.from_array(want.matrix))
        rec.record(ok)
    return [mm, blk, rec]


def check_multilinear(rng, count: int) -> CheckResult:
    res = CheckResult("multilinear product: sums, Kronecker, mode products, Tracy-Singh")
    for _ in range(count):
        n = random_shape(rng, 4, 256, max_extent=4)
        A = random_tensor(rng, n)
        Bs = [rng.standard_normal((int(rng.integers(1, 5)), nk)) for nk in n]
        M = random_blocking(rng, n)
        rows = [random_partition(rng, B.shape[0]) for B in Bs]
        C = multilinear_naive(A, Bs)
        ok = approx_equal(C, multilinear_kron(A, Bs))
        ok &= approx_equal(C, multilinear_mode_products(A, Bs))
        ok &= approx_equal(C, multilinear_blocked(A, Bs, rows, M))
        res.record(ok, f"n={n}")
    return res


def run_suite(seed: int = 0, scale: float = 1.0,
              build_pm: Optional[Callable] = None) -> list[CheckResult]:
    """Run every check.

    ``build_pm`` replaces the blocked-vec permutation builder under test; by
    default the module-level ``build_P_M`` is looked up at call time, so tests
    can also patch it there.
    """
    build_pm = build_pm or build_P_M
    rng = np.random.default_rng(seed)
    cnt = lambda base: max(1, int(round(base * scale)))  # noqa: E731
    results = [
        check_shuffles(rng, cnt(100)),
        check_permutation_facts(rng, cnt(100)),
        check_transpose_shuffles(rng, cnt(100)),
        check_rank1(rng, cnt(100)),
        check_blocked_vec(rng, cnt(100), build_pm),
        check_uniform(rng, cnt(50), build_pm),
        check_block_unfold(rng, cnt(60)),
        *check_contractions(rng, cnt(60)),
        check_multilinear(rng, cnt(40)),
    ]
    return results


def format_report(results: list[CheckResult], seed: int) -> str:
    lines = [f"blocktensor verify (seed={seed})"]
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        lines.append(f"{status}  {res.name}: {res.instances} instances, {res.failures} failures")
        lines.extend(f"      e.g. {note}" for note in res.notes)
    total = sum(r.failures for r in results)
    lines.append("all checks passed" if total == 0 else f"{total} failing instances")
    return "\n".join(lines) + "\n"
