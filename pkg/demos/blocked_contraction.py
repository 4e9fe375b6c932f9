"""A contraction three ways: nested loops, one matrix product, block by block.

F is 3 x 4 x 2 blocks and G is 2 x 3 x 5 blocks; mode 3 of F is summed
against mode 1 of G, so every block of H is a sum of two block contractions.
"""

import time

import numpy as np

from blocktensor import (
    Blocking,
    BlockedContractionPlan,
    ContractionPlan,
    Tensor,
    approx_equal,
    contract_block_recipe,
    contract_blocked,
    contract_naive,
    contract_unfolded,
)

rng = np.random.default_rng(2)
S = Blocking([[1, 2, 1], [1, 1, 2, 1], [2, 1]])
T = Blocking([[2, 1], [1, 1, 1], [1, 1, 2, 1, 1]])
F = Tensor(rng.standard_normal(int(np.prod(S.shape))), S.shape)
G = Tensor(rng.standard_normal(int(np.prod(T.shape))), T.shape)

plan = ContractionPlan(p=(1, 2, 3), q=(1, 2, 3), f=2)
bplan = BlockedContractionPlan(plan, S, T)

for name, fn, args in (("naive", contract_naive, (plan,)),
                       ("unfolded", contract_unfolded, (plan,)),
                       ("blocked", contract_blocked, (bplan,))):
    t0 = time.perf_counter()
    H = fn(F, G, *args)
    print(f"{name:9s} {time.perf_counter() - t0:.4f} s  shape {H.shape}")

ref = contract_naive(F, G, plan)
print("blocked agrees with loops:", approx_equal(contract_blocked(F, G, bplan), ref))
print("result blocking:", contract_blocked(F, G, bplan).blocking)

# one block of H from the two block-pair products
print("block (2,3,1,4) of H:\n", contract_block_recipe(F, G, bplan, (2, 3, 1, 4)))
