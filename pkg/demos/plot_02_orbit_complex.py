"""
The orbit complex of block words
================================

Cells are words in which every letter occurs xi times and new letters
appear in increasing order.  Faces delete a letter; the cone operator D
contracts the augmented complex.
"""

from fernlab.orbit import (
    BlockWord,
    OrbitComplex,
    enumerate_words,
    face,
    nullhomotopy_D,
    verify_homotopy_identity,
)

# the 1-cells for blocks of size two
for w in enumerate_words(2, 1):
    print(w, "faces:", [str(face(w, i)) for i in range(2)])

w = BlockWord(2, (0, 0, 2, 3, 2, 1, 1, 3))
print("f_1", w, "=", face(w, 1))
print("D (0,0,2,2,1,1) =", nullhomotopy_D(BlockWord(2, (0, 0, 2, 2, 1, 1))))

# cell counts and reduced homology for four blocks of size two
oc = OrbitComplex(4, 2)
print("cells:", oc.cell_counts())
for h in oc.homology():
    print(f"  reduced H_{h.degree} = {h}")

rep = verify_homotopy_identity(4, 2, oc)
print("dD + Dd = id on -1..2:", rep.full_range)

# with xi = 1 and an even number of letters the top degree survives
print("xi=1, n=4:", [str(h) for h in OrbitComplex(4, 1).homology()])
