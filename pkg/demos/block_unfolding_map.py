"""Where the blocks of a tensor land in an unfolding.

In the plain mode-1 unfolding a block is scattered over several column
ranges; after permuting rows and columns it becomes one rectangle.
"""

import numpy as np

from blocktensor import Tensor, block_unfold, extract_block, get_block, make_blocking, mode_unfold
from blocktensor.core import ivec
from blocktensor.figure import block_map, column_runs, figure, is_contiguous_rectangle

n = (9, 5, 8)
M = make_blocking(n, ([2, 3, 4], [3, 2], [2, 2, 2, 2]))
A = Tensor(np.random.default_rng(1).standard_normal(360), n, blocking=M)

print(figure(A, 1, blocked=False))
print(figure(A, 1, blocked=True))

label = ivec((3, 1, 1), M.b)
plain = block_map(M, [1], [2, 3], blocked=False)
blocked = block_map(M, [1], [2, 3], blocked=True)
print("block 311, plain column runs:", column_runs(plain, label))
print("block 311, one rectangle after block unfolding:", is_contiguous_rectangle(blocked, label))

# each block of the block unfolding is the unfolding of a block
bu = block_unfold(A, M, [1], [2, 3])
k = (3, 1, 1)
print("block equals unfolded block:", np.array_equal(get_block(bu, k), mode_unfold(extract_block(A, M, k), 1).matrix))
