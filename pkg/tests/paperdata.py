"""Worked fixtures: the small catalogue of triads used across the tests."""

from triadlab.complexes import Complex3
from triadlab.families import koszul_complex
from triadlab.gradedmatrix import GradedMatrix, PresentedModule
from triadlab.poly import parse_poly
from triadlab.scalars import QQ
from triadlab.subquotients import ExtCocycle, SubquotientDatum
from triadlab.triads import triad_validate

from .util import gm


def cyc(twist, rels):
    return PresentedModule.cyclic(twist, [parse_poly(r) for r in rels])


def residue_class_module():
    """C = A/(a) as a module over the whole ring: B/(a,X,Y,Z,T)."""
    return cyc(0, ["a", "X", "Y", "Z", "T"])


def heart_quartic():
    """H = B(-1)/(X,Y,Z,aT,T^2), the heart of the quartic family."""
    return cyc(1, ["X", "Y", "Z", "a*T", "T^2"])


def koszul_resolution_of_residue():
    """Koszul resolution of B/(a,X,Y,Z,T) on the ordered sequence."""
    return koszul_complex([parse_poly(v) for v in ["a", "X", "Y", "Z", "T"]])


def modular_triad_5171():
    """Majeure of the modular triad of H = A/(a): (X Y Z T a) -> B -> 0."""
    d1 = gm([0], [1, 1, 1, 1, 0], [["X", "Y", "Z", "T", "a"]])
    d0 = gm([], [0], [])
    return triad_validate(Complex3(d1, d0, check=False), provenance="modular 5171")


def representable_minor_5172():
    """The mineure triad 0 -> A --a--> A."""
    zero = PresentedModule.zero()
    m0 = cyc(0, ["X", "Y", "Z", "T"])
    f1 = GradedMatrix([0], [], [[]], QQ)
    a = parse_poly("a")
    f0 = GradedMatrix([0], [0], [[a]], QQ)
    return triad_validate((zero, f1, m0, f0, m0), provenance="representable 5172")


def quartic_cocycle_case2():
    """u(e4) = 1, u(eps1) = -T over the Koszul resolution of C."""
    c = residue_class_module()
    h = heart_quartic()
    res = koszul_resolution_of_residue()
    # stage two basis: pairs (0,i) then (i,j) in lexicographic order;
    # index 3 is a^T, index 4 is X^Y
    images = {3: {0: parse_poly("1")}, 4: {0: parse_poly("-T")}}
    p2 = list(res[1].src_twists)
    u_hat = GradedMatrix.from_columns(
        list(h.gen_twists),
        [images.get(j, {}) for j in range(len(p2))],
        p2,
        QQ,
    )
    return ExtCocycle(c, res[:3], h, u_hat)


def quartic_cocycle_case1():
    """u(e4) = 1 only: reproduces the trivial construction's majeure."""
    c = residue_class_module()
    h = heart_quartic()
    res = koszul_resolution_of_residue()
    images = {3: {0: parse_poly("1")}}
    p2 = list(res[1].src_twists)
    u_hat = GradedMatrix.from_columns(
        list(h.gen_twists),
        [images.get(j, {}) for j in range(len(p2))],
        p2,
        QQ,
    )
    return ExtCocycle(c, res[:3], h, u_hat)


def cocycle_520(nonzero):
    """C = k, H = k(-2); the zero cocycle or eps1 -> 1."""
    c = residue_class_module()
    h = cyc(2, ["a", "X", "Y", "Z", "T"])
    res = koszul_resolution_of_residue()
    images = {4: {0: parse_poly("1")}} if nonzero else {}
    p2 = list(res[1].src_twists)
    u_hat = GradedMatrix.from_columns(
        list(h.gen_twists),
        [images.get(j, {}) for j in range(len(p2))],
        p2,
        QQ,
    )
    return c, h, ExtCocycle(c, res[:3], h, u_hat)


def quartic_flag():
    """M_0 = R/(X,Y,Z,T^3) with J = <t> and M_1 = <t^2>."""
    m0 = cyc(0, ["X", "Y", "Z", "T^3"])
    j_gens = gm([0], [1], [["T"]])
    m1_gens = gm([0], [2], [["T^2"]])
    return SubquotientDatum(m0, j_gens, m1_gens)


def printed_trivial_majeure():
    """The trivial triad's majeure with the matrix entries as printed."""
    rows = [
        ["X", "Y", "Z", "0", "0", "0", "0", "0", "0", "a*T^2", "T^3"],
        ["-a", "0", "0", "Z", "T", "0", "0", "0", "Y", "0", "0"],
        ["0", "-a", "0", "0", "0", "Z", "T", "0", "-X", "0", "0"],
        ["0", "0", "-a", "-X", "0", "-Y", "0", "T", "0", "0", "0"],
        ["0", "0", "0", "0", "-X", "0", "-Y", "-Z", "0", "-a^2T", "-a*T^2"],
    ]
    d1 = gm([0, 1, 1, 1, 1], [1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 3], rows)
    d0 = gm([0], [0, 1, 1, 1, 1], [["a", "X", "Y", "Z", "T"]])
    return triad_validate(Complex3(d1, d0), provenance="trivial majeure printed")


# An explicit flat family of the quartic type (a fixture for the record,
# not constructed here): the union of the curves with ideals
#   J_a = (X^2, XY, Y^2, X - aY)   and   J = (X^2, XZ, Z^2, XY - ZT)
# is cut out over the valuation ring by
#   I_a = (X^2, XYZ, Y^2Z^2, XY^3 - Y^2ZT, XZ^2 - aYZ^2,
#          -XZT - aXY^2 + aYZT).


def printed_quartic_triad():
    """The quartic family's triad with the matrix entries as printed."""
    rows = [
        ["X", "Y", "Z", "0", "0", "0", "0", "0", "T^2"],
        ["-a", "0", "0", "Z", "T", "0", "0", "0", "Y"],
        ["0", "-a", "0", "0", "0", "Z", "T", "0", "-X"],
        ["0", "0", "-a", "-X", "0", "-Y", "0", "T", "0"],
        ["0", "0", "0", "0", "-X", "0", "-Y", "-Z", "-a*T"],
    ]
    d1 = gm([0, 1, 1, 1, 1], [1, 1, 1, 2, 2, 2, 2, 2, 2], rows)
    d0 = gm([0], [0, 1, 1, 1, 1], [["a", "X", "Y", "Z", "T"]])
    return triad_validate(Complex3(d1, d0), provenance="quartic printed")
