"""Trivial triads: joining a module to one of its sub-quotients.

Given a flag M_1 ⊆ J ⊆ M_0 of graded modules over the residue field, the
complex M_1 ⊗ A -> M_0 ⊗ A -> (M_0/J) ⊗ A with both maps multiplied by
the uniformizer is a triad whose associated functor takes the value M_0
at the special point and M = J/M_1 at the generic point.  The two
degenerate flags give the modular and representable triads of the
residue field.
"""

from triadlab import (
    GradedMatrix,
    PresentedModule,
    QFunction,
    SubquotientDatum,
    chiffres_format,
    family_report,
    fiber_functor,
    parse_poly,
    resolution_majeure,
    triad_invariants,
    trivial_triad,
)


def vectors(m0, items):
    cols = [{0: parse_poly(t)} for t in items]
    degs = [p[0].wdeg() + m0.gen_twists[0] for p in cols]
    return GradedMatrix.from_columns(list(m0.gen_twists), cols, degs, m0.field)


print("== the flag <t^2> in <t> in R/(X,Y,Z,T^3) ==")
M0 = PresentedModule.cyclic(0, [parse_poly(t) for t in ["X", "Y", "Z", "T^3"]])
datum = SubquotientDatum(M0, vectors(M0, ["T"]), vectors(M0, ["T^2"]))
t = trivial_triad(datum)
print("V(k):", fiber_functor(t, "special"), "  (the module M_0)")
print("V(K):", fiber_functor(t, "generic"), "  (the sub-quotient k(-1))")

res = resolution_majeure(t)
l1, l0, lm1 = res.majeure.terms()
print(
    "majeure resolution:",
    chiffres_format(l1), "->", chiffres_format(l0), "->", chiffres_format(lm1),
)
print("kernel generators:", chiffres_format(res.majeure.kernel_chiffres()))
fam = family_report(res.majeure, QFunction({2: 1, 3: 4, 4: 1}))
print(f"family: (d,g) = ({fam.degree},{fam.genus}) at h0 = {fam.h0}")
print("(the compact cone of demo 02 does better: (4,0) at shift 0)")
print()

print("== degenerate flags over M_0 = k ==")
K = PresentedModule.cyclic(0, [parse_poly(v) for v in "XYZT"])
full = vectors(K, ["1"])
empty = GradedMatrix.from_columns([0], [], [], K.field)

quotient_view = trivial_triad(SubquotientDatum(K, full, full))
print("0 as a quotient of k :", ", ".join(triad_invariants(quotient_view).flags()))

submodule_view = trivial_triad(SubquotientDatum(K, empty, empty))
print("0 as a submodule of k:", ", ".join(triad_invariants(submodule_view).flags()))
