"""Exact arithmetic in k[a,X,Y,Z,T] and minimal graded free resolutions.

The coefficient ring is the localization A = k[a]_(a), a discrete
valuation ring with uniformizer a; the variable a carries weighted degree
zero, so "degree-zero units" are exactly the polynomials in a with a
nonzero constant term.  This walk-through builds a module, resolves it,
and reads off its degree-by-degree structure over A.
"""

from triadlab import (
    PresentedModule,
    chiffres_format,
    degree_piece,
    free_resolution,
    is_finite_over_A,
    parse_poly,
    torsion_saturation,
)

print("== polynomials ==")
p = parse_poly("aT^2 - XY")
print("p =", p, "   weighted degree:", p.wdeg())
print("p at a=0:", p.specialize_a())
print()

print("== the module H = B(-1)/(X, Y, Z, aT, T^2) ==")
H = PresentedModule.cyclic(1, [parse_poly(t) for t in ["X", "Y", "Z", "a*T", "T^2"]])
print("generators:", chiffres_format(H.generators()))

res = free_resolution(H)
print("minimal free resolution stages:")
for k, stage in enumerate(res, start=1):
    print(f"  stage {k}: {chiffres_format(stage.source())}")
print()

print("== degree pieces over the valuation ring ==")
for n in range(0, 4):
    print(f"  H_{n} =", degree_piece(H, n))
print()
print("The degree-2 piece is pure torsion: the class of T is killed by a.")
tors = torsion_saturation(H)
print("torsion submodule generated in degrees:", list(tors.gens.src_twists))
print()

rep = is_finite_over_A(H)
print("finite over A:", rep.is_finite, "- top nonzero degree:", rep.top_degree)
