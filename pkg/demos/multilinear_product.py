"""One multilinear product computed four ways."""

import numpy as np

from blocktensor import (
    Blocking,
    Tensor,
    approx_equal,
    multilinear_blocked,
    multilinear_kron,
    multilinear_mode_products,
    multilinear_naive,
)

rng = np.random.default_rng(3)
A = Tensor(rng.standard_normal(24), (2, 3, 4))
Bs = [rng.standard_normal((3, 2)), rng.standard_normal((2, 3)), rng.standard_normal((4, 4))]

C = multilinear_naive(A, Bs)
print("Kronecker form agrees:   ", approx_equal(multilinear_kron(A, Bs), C))
print("mode products agree:     ", approx_equal(multilinear_mode_products(A, Bs), C))

# blocked form: columns of B_k split like mode k of A, rows split freely
M = Blocking([[1, 1], [2, 1], [2, 2]])
rows = [[2, 1], [1, 1], [1, 3]]
Cb = multilinear_blocked(A, Bs, rows, M)
print("Tracy-Singh form agrees: ", approx_equal(Cb, C))
print("result carries blocking: ", Cb.blocking)
