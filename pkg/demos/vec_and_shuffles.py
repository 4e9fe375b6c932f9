"""Vec order, multi-index arithmetic and perfect shuffles."""

import numpy as np

from blocktensor import Tensor, ivec, ivec_inverse, perfect_shuffle, rank1, vec
from blocktensor import permutation as perm

# storage is vec order: first index fastest
A = Tensor(np.arange(1, 361), (9, 5, 8))
print("A(2,1,3) sits at", ivec((2, 1, 3), A.shape), "->", A[2, 1, 3])
print("entry 183 is A", ivec_inverse(183, A.shape))

# vec of a rank-1 tensor is the reversed Kronecker product of its vectors
a, b, c = [1, 2], [1, 10], [1, 100]
print("vec(a o b o c) =", vec(rank1([a, b, c])).tolist())
print("kron(c, b, a)  =", np.kron(c, np.kron(b, a)).tolist())

# a perfect shuffle deals a vector into r piles
w = perfect_shuffle(2, 3)
print("Pi_{2,3} as a vector:", w.tolist())
print("applied to 10..60:", perm.apply(w, [10, 20, 30, 40, 50, 60]).tolist())

# transposing a q x r matrix is the inverse shuffle on its vec
M = np.arange(6.0).reshape(2, 3, order="F")  # vec(M) = 0..5
print("vec(M^T) via shuffle:", perm.apply_transpose(perfect_shuffle(2, 3), M.ravel(order="F")).tolist())
print("vec(M^T) directly:   ", M.T.ravel(order="F").tolist())

# permutation vectors compose like their matrices: P_w = P_u P_v for w = v(u)
u, v = perm.PermutationVector([2, 3, 1]), perm.PermutationVector([1, 3, 2])
w = perm.compose(u, v)
print("compose:", w.tolist(), np.array_equal(perm.to_dense(w), perm.to_dense(u) @ perm.to_dense(v)))
