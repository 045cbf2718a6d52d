"""Walk through the rank-2 superbasic example b = [[0, z], [1, 0]] over F_2:
Hodge polygon, Newton slopes, decency, and the affine Deligne-Lusztig point
set in a small lattice window."""
from localshtuka import (BoundSpec, Coweight, LoopElement, adlv_points, finite_field,
                         newton_slopes, relative_position)
from localshtuka.newton import decency_index

F2 = finite_field(2)
b = LoopElement.from_terms(F2, [[{}, {1: 1}], [{0: 1}, {}]], 96)

print("b =", b)
print("Hodge polygon:", relative_position(b).parts)
slopes = newton_slopes(b)
print("Newton slopes:", [str(x) for x in slopes], "stable at n =", slopes.stable_at)
print("decency index:", decency_index(b, 16, slopes))

for q in (2, 4):
    ring = finite_field(2, 2) if q == 4 else F2
    res = adlv_points(b.truncate(24), BoundSpec(Coweight((1, 0))), ring, 2)
    print(f"X_(1,0)(b) over F_{q}, window 2: {res.count} of {res.candidates} candidate lattices")
    for L in res.points:
        print("   ", L.exps, L.upper)
