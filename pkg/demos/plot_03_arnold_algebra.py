"""
Cohomology of ordered configurations in the plane
=================================================

Monomials in the classes w_ab with strictly increasing second index form
a basis; anything else is rewritten with the three-term relation.
"""

from fernlab.arnold import act, basis, embed, poincare_coefficient, restrict, straighten
from fernlab.wreath import Perm

m = 4
print("Poincare polynomial of 4 points:", [poincare_coefficient(m, k) for k in range(m)])
print("degree-2 basis:", " ".join(str(b) for b in basis(m, 2)))

# w13 w23 is not admissible
x = straighten([(1, 3), (2, 3)], 3)
print("w13 w23 =", x)
print("w12 w12 =", straighten([(1, 2), (1, 2)], 3))

# permutations relabel the points and re-straighten
y = straighten([(1, 2), (3, 4)], 4)
print("(2 3) . w12 w34 =", act(Perm.transposition(4, 2, 3), y))

# forgetting the last points kills every class that touches them
print("restrict w12 w34 to 3 points:", restrict(y, 3))
print("embed w13 w23 into 5 points:", embed(x, 5))
