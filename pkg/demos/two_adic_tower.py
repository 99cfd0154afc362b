"""Z/8 as the limit of the tower Z/8 -> Z/4 -> Z/2, with C2 acting by inversion.

The comparison map from H^1 of the limit to the limit of the H^1 sets is a
bijection here, and lim^1 of the tower vanishes.
"""

from cohomlim import inversion_action, lim1_tower, limit, make_cyclic, make_hom, make_tower, theta_1, validate_system

c2 = make_cyclic(2)
levels = [make_cyclic(n) for n in (8, 4, 2)]
maps = [make_hom(src, dst, [x % dst.order for x in src.elements]) for src, dst in zip(levels, levels[1:])]
tower = validate_system(make_tower([inversion_action(c2, a) for a in levels], maps))

lim = limit(tower)
print(f"limit has order {lim.order}; projection to the top level is bijective: "
      f"{lim.projections[0].is_injective() and lim.projections[0].is_surjective()}")

report = theta_1(tower)
print(f"|H^1(lim)| = {report.left_size}, |lim H^1| = {report.right_size}, level sizes {report.level_sizes}")
print(f"theta_1 bijective: {report.bijective}")

l1 = lim1_tower(tower)
print(f"lim^1 of Z/8 -> Z/4 -> Z/2 has {l1.size} element(s); Mittag-Leffler: {l1.mittag_leffler}")
