"""
Invariants under permuting blocks
=================================

The rational cohomology of unordered configurations of n blocks of xi
points is the part fixed by the wreath product of symmetric groups.
"""

from fernlab.wreath import WreathGroup, coset_reps, invariant_space, orbit_count_pairs

g = WreathGroup(3, 2)
print("order of S_2 wr S_3:", g.order)

for n in range(1, 5):
    dims = [invariant_space(n, 2, k).dim for k in range(3)]
    print(f"n={n} xi=2  invariant dims by degree: {dims}  pair orbits: {orbit_count_pairs(n, 2)}")

# an invariant basis is in reduced echelon form over basis monomials
ib = invariant_space(2, 2, 1)
for v in ib.vectors:
    print("  ", v)

# one coset representative per choice of two blocks out of four
print("coset representatives:", len(coset_reps(4, 2, 2)))
