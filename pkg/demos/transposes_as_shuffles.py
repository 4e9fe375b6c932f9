"""Mode transpositions of a tensor are shuffles of its vec."""

import numpy as np

from blocktensor import Tensor, adjacent_swap_perm, p_transpose, to_front_perm, transpose_perm_via_swaps
from blocktensor import permutation as perm

rng = np.random.default_rng(0)
n = (2, 3, 4, 2)
A = Tensor(rng.standard_normal(int(np.prod(n))), n)

# swap modes 2 and 3
B = p_transpose(A, [1, 3, 2, 4])
P = adjacent_swap_perm(n, 2)
print("swap 2<->3 matches:", np.array_equal(perm.apply(P, A.data), B.data))

# bring mode 3 to the front
C = p_transpose(A, [3, 1, 2, 4])
print("mode 3 to front matches:", np.array_equal(perm.apply(to_front_perm(n, 3), A.data), C.data))

# any mode permutation is a product of adjacent swaps
p = [4, 2, 1, 3]
P = transpose_perm_via_swaps(n, p)
print("[4 2 1 3] via swaps matches:", np.array_equal(perm.apply(P, A.data), p_transpose(A, p).data))
