"""Nonabelian H^1 of S3 acting on itself, read two ways.

First as orbits of cocycles under the coboundary action, then as
isomorphism classes of twisted torsors.  The two partitions coincide.
"""

from cohomlim import conjugation_action, h1, make_symmetric
from cohomlim.h1 import enumerate_z1
from cohomlim.torsors import classify_torsors

act = conjugation_action(make_symmetric(3))
h = h1(act)
print(f"S3 acting on itself by conjugation: |Z^1| = {h.z1_size}, |H^1| = {h.size}")
for i, (cls, stab) in enumerate(zip(h.classes, h.stab_sizes)):
    print(f"  class {i}: {len(cls)} cocycles, stabilizer order {stab}, rep {h.rep(i).values}")

# orbit size times stabilizer order recovers |A| every time
assert all(len(c) * s == act.a.order for c, s in zip(h.classes, h.stab_sizes))

tors = classify_torsors(act, enumerate_z1(act), h)
print(f"torsor isomorphism classes: {len(tors['classes'])}")
print(f"same partition as the coboundary orbits: {tors['agrees_with_h1']}")
