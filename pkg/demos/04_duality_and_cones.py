"""Duality, the cone constructions, and the catalogue of small families.

Dual triads swap the modular and representable properties; the cone of a
zero cocycle is the direct sum of the resolutions of the heart and the
cokernel, while a surjective cocycle admits a compact variant with a
smaller middle term and a smaller minimal family.
"""

from triadlab import (
    GradedMatrix,
    PresentedModule,
    QFunction,
    chiffres_format,
    compact_cone_triad,
    cone_triad,
    dual_triad,
    ExtCocycle,
    family_report,
    koszul_complex,
    koszul_q_sharp,
    parse_poly,
    triad_invariants,
    triad_validate,
)

print("== duality swaps the classification flags ==")
zero = PresentedModule.zero()
m0 = PresentedModule.cyclic(0, [parse_poly(v) for v in "XYZT"])
f1 = GradedMatrix([0], [], [[]], m0.field)
f0 = GradedMatrix([0], [0], [[parse_poly("a")]], m0.field)
minor = triad_validate((zero, f1, m0, f0, m0))
print("the triad 0 -> A -a-> A:", ", ".join(triad_invariants(minor).flags()))
print("its dual:              ", ", ".join(triad_invariants(dual_triad(minor)).flags()))
print()

print("== Koszul families ==")
for degs in [(1, 1, 1, 1), (1, 1, 2, 2), (1, 2, 3, 4)]:
    _, q = koszul_q_sharp(*degs)
    print(f"  degrees {degs}: q = {q!r}")
print()

print("== the two cones over C = k, H = k(-2) ==")
C = PresentedModule.cyclic(0, [parse_poly(t) for t in ["a", "X", "Y", "Z", "T"]])
H2 = PresentedModule.cyclic(2, [parse_poly(t) for t in ["a", "X", "Y", "Z", "T"]])
res = koszul_complex([parse_poly(v) for v in ["a", "X", "Y", "Z", "T"]])
p2 = list(res[1].src_twists)


def cocycle(images):
    u_hat = GradedMatrix.from_columns(
        list(H2.gen_twists), [images.get(j, {}) for j in range(len(p2))], p2, C.field
    )
    return ExtCocycle(C, res[:3], H2, u_hat)


t_zero = cone_triad(C, H2, cocycle({}))
fam = family_report(t_zero, QFunction({2: 2, 3: 4, 4: 3}))
print("zero cocycle:    ", fam.bracket())
print(f"                  (d,g) = ({fam.degree},{fam.genus}), h0 = {fam.h0}")

t_onto = compact_cone_triad(C, H2, cocycle({4: {0: parse_poly("1")}}))
fam = family_report(t_onto, QFunction({2: 2, 3: 2, 4: 2}))
print("surjective:      ", fam.bracket())
print(f"                  (d,g) = ({fam.degree},{fam.genus}), h0 = {fam.h0}")
print()
print("Same heart and cokernel, different extension class: the compact")
print("triad realizes a family eight degrees smaller.")
