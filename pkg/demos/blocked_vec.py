"""Stacking the blocks of a tensor is one permutation of vec(A).

The 9 x 5 x 8 tensor is split as 1:9 = [1:2 | 3:5 | 6:9], 1:5 = [1:3 | 4:5]
and 1:8 into four pairs.
"""

import numpy as np

from blocktensor import (
    Blocking,
    Tensor,
    build_P_M,
    build_P_M_uniform,
    extract_block,
    locate,
    make_blocking,
    vec_blocked,
    vol,
)
from blocktensor import permutation as perm

n = (9, 5, 8)
M = make_blocking(n, ([2, 3, 4], [3, 2], [2, 2, 2, 2]))
A = Tensor(np.arange(1, 361), n)

print("blocks per mode:", M.b)
print("block (2,1,3) has shape", extract_block(A, M, (2, 1, 3)).shape, "and", vol(M, (2, 1, 3)), "entries")
print("entry (3,1,5) is entry", locate(M, (3, 1, 5))[1], "of block", locate(M, (3, 1, 5))[0])

# build the permutation from shuffles only, never as a dense matrix
P = build_P_M(M)
print("P_M reproduces blocked vec:", np.array_equal(perm.apply(P, A.data), vec_blocked(A, M)))
print("first 12 entries of blocked vec:", vec_blocked(A, M)[:12].astype(int).tolist())

# uniform blockings have a closed form
U = Blocking.uniform((4, 6, 4), (2, 3, 2))
print("uniform closed form agrees:", build_P_M_uniform(U) == build_P_M(U))
