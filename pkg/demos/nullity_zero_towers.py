"""
Nullity zero: towers g_n + D + Z and outer derivations
======================================================

A diagonal derivation of sl_n with entries a_i = i is inner at every finite
level, but its inner representative keeps growing with n.  An almost scalar
diagonal stabilizes, and the builder refuses it.
"""
from leala import constructions as C, structure as St

tower = C.build_nullity_zero("A", [3, 4, 5, 6], [C.EX_6_2_1])
for lv in tower.levels:
    A = lv.algebra
    split = St.split_nullity_zero(A)
    tri = St.nullity_zero_triangle(A)
    print(f"{lv.type.label}: dim {A.dim}, core {split.core.dim}, "
          f"D {len(split.d_part)}, Z {len(split.z_part)}, predicates {tri.data['predicates']}")

trace = St.outer_tower_test(tower)
for rank, h, size in trace.levels:
    print(f"  rank {rank}: h = {h}  (support {size})")
print("stabilized:", trace.stabilized, " growing:", trace.growing)

try:
    C.build_nullity_zero("A", [3, 4, 5], [C.ALMOST_SCALAR])
except C.BuilderRefusal as e:
    print("refused:", e)

# built anyway for comparison: the representative settles at h[1]
trace = St.outer_tower_test(C.build_nullity_zero("A", [3, 4, 5], [C.ALMOST_SCALAR], validate=False))
print("almost scalar:", trace.support_sizes, "stabilized:", trace.stabilized)

# type B with a constant pattern is admissible and keeps growing
trace = St.outer_tower_test(C.build_nullity_zero("B", [2, 3, 4], [C.EX_6_2_2]))
print("type B constant:", trace.support_sizes, "growing:", trace.growing)

# a split simple algebra is tame, centreless and indecomposable at once
print("C3:", St.nullity_zero_triangle(C.build_split_simple("C3")).data["predicates"])
