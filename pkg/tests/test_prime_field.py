"""The prime-field session option: the fast regression path."""

from triadlab.chiffres import chiffres_format
from triadlab.gradedmatrix import PresentedModule
from triadlab.groebner import groebner_basis, normal_form
from triadlab.pieces import degree_piece
from triadlab.pid import InvariantFactors
from triadlab.poly import parse_poly
from triadlab.resolutions import free_resolution
from triadlab.scalars import DEFAULT_PRIME, ScalarField, field_from_name

FP = ScalarField(DEFAULT_PRIME)


def test_field_parsing():
    assert field_from_name("Fp").char == DEFAULT_PRIME
    assert field_from_name("Fp:7").char == 7
    assert field_from_name("QQ").char == 0


def test_groebner_over_fp():
    gens = [{0: parse_poly(t, FP)} for t in ["X^2 - YT", "XY - ZT", "XZ - Y^2"]]
    gb = groebner_basis(gens, [0], FP)
    assert not normal_form({0: parse_poly("X^2 - YT", FP)}, gb)
    assert normal_form({0: parse_poly("X", FP)}, gb)


def test_resolution_and_pieces_over_fp():
    h = PresentedModule.cyclic(
        1, [parse_poly(t, FP) for t in ["X", "Y", "Z", "a*T", "T^2"]], FP
    )
    res = free_resolution(h)
    assert chiffres_format(res[0].source()) == "2^4,3"
    assert degree_piece(h, 2) == InvariantFactors(0, (1,))


def test_quartic_pipeline_over_fp():
    from triadlab.families import QFunction, family_report
    from triadlab.gradedmatrix import GradedMatrix
    from triadlab.families import koszul_complex
    from triadlab.subquotients import ExtCocycle, compact_cone_triad

    C = PresentedModule.cyclic(
        0, [parse_poly(t, FP) for t in ["a", "X", "Y", "Z", "T"]], FP
    )
    H = PresentedModule.cyclic(
        1, [parse_poly(t, FP) for t in ["X", "Y", "Z", "a*T", "T^2"]], FP
    )
    res = koszul_complex([parse_poly(v, FP) for v in ["a", "X", "Y", "Z", "T"]], FP)
    images = {3: {0: parse_poly("1", FP)}, 4: {0: parse_poly("-T", FP)}}
    p2 = list(res[1].src_twists)
    u_hat = GradedMatrix.from_columns(
        list(H.gen_twists), [images.get(j, {}) for j in range(len(p2))], p2, FP
    )
    u = ExtCocycle(C, res[:3], H, u_hat)
    t = compact_cone_triad(C, H, u, verify=False)
    assert chiffres_format(t.terms()[0]) == "1^3,2^6"
    rep = family_report(t, QFunction({2: 1, 3: 3}))
    assert (rep.degree, rep.genus, rep.h0) == (4, 0, 0)


def test_specialize_with_value_over_fp():
    p = parse_poly("a^2T + XY", FP)
    q = p.specialize_a(FP(3))
    assert q == parse_poly("9T + XY", FP)
