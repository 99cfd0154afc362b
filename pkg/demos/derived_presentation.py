"""S3 rebuilt as the limit of its quotients by the derived series.

S3 > A3 > 1 gives the tower S3 -> S3/A3.  The canonical map from S3 into
the limit is an equivariant isomorphism and theta_1 compares the H^1 sets.
"""

from cohomlim import conjugation_action, derived_tower, make_symmetric, theta_1, verify_presentation

act = conjugation_action(make_symmetric(3))
tower = derived_tower(act)
print("tower levels:", [tower.objects[r].a.order for r in tower.tower_order()])

rep = verify_presentation(act, tower)
for key in ("injective", "surjective", "equivariant", "ok"):
    print(f"  {key}: {rep[key]}")

t1 = theta_1(tower)
print(f"theta_1: {t1.left_size} -> {t1.right_size}, bijective {t1.bijective}")
for note in t1.notes:
    print("  note:", note)
