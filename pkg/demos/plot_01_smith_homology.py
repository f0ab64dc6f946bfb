"""
Integral homology from Smith normal form
========================================

Chain complexes over the integers, reduced with unimodular row and
column operations.
"""

from fernlab.linalg import (
    ChainComplex,
    SparseIntMatrix,
    elementary_divisors,
    homology_all,
    smith_normal_form,
)

# a diagonal that is not yet a divisibility chain
a = SparseIntMatrix.from_dense([[4, 0, 0], [0, 6, 0], [0, 0, 10]])
u, d, v = smith_normal_form(a)
print("diagonal:", d.diagonal())
print("U A V == D:", u @ a @ v == d)
print("invariant factors:", elementary_divisors(a))

# minimal cell structure of the real projective plane
rp2 = ChainComplex(
    {0: 1, 1: 1, 2: 1},
    {1: SparseIntMatrix.from_dense([[0]]), 2: SparseIntMatrix.from_dense([[2]])},
)
for h in homology_all(rp2):
    print(f"H_{h.degree}(RP^2) = {h}")
