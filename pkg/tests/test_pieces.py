import pytest

from triadlab.errors import InconclusiveError
from triadlab.gradedmatrix import PresentedModule
from triadlab.pid import InvariantFactors
from triadlab.pieces import (
    degree_piece,
    is_finite_over_A,
    submodule_from_vectors,
    torsion_saturation,
)
from triadlab.poly import parse_poly

from .util import gm


def cyc(twist, rels):
    return PresentedModule.cyclic(twist, [parse_poly(r) for r in rels])


H513 = cyc(1, ["X", "Y", "Z", "a*T", "T^2"])


def test_degree_piece_of_heart():
    assert degree_piece(H513, 1) == InvariantFactors(1)
    assert degree_piece(H513, 2) == InvariantFactors(0, (1,))
    assert degree_piece(H513, 3) == InvariantFactors(0)
    assert degree_piece(H513, 0) == InvariantFactors(0)


def test_degree_piece_below_generators_is_zero():
    assert degree_piece(H513, -3).is_zero


def test_degree_piece_free_module():
    f = PresentedModule.free([0])
    assert degree_piece(f, 2) == InvariantFactors(10)


def test_torsion_of_heart_is_class_of_T():
    tors = torsion_saturation(H513)
    assert not tors.is_zero
    assert list(tors.gens.src_twists) == [2]
    col = tors.gens.column(0)
    assert repr(col[0]) == "T"
    # killed by a: presentation has the relation a
    mod = tors.module
    assert degree_piece(mod, 2) == InvariantFactors(0, (1,))


def test_torsion_of_free_module_is_zero():
    f = PresentedModule.free([0, 1])
    assert torsion_saturation(f).is_zero


def test_torsion_of_a_killed_module_is_everything():
    m = cyc(0, ["a"])
    tors = torsion_saturation(m)
    assert not tors.is_zero
    assert list(tors.gens.src_twists) == [0]
    assert repr(tors.gens.column(0)[0]) == "1"


def test_torsion_with_higher_power():
    m = cyc(0, ["a^3", "X", "Y", "Z", "T"])
    tors = torsion_saturation(m)
    assert not tors.is_zero
    assert degree_piece(tors.module, 0) == InvariantFactors(0, (3,))


def test_finite_over_A_examples():
    r = is_finite_over_A(cyc(0, ["a", "X", "Y", "Z", "T"]))
    assert r.is_finite and r.top_degree == 0

    r = is_finite_over_A(cyc(0, ["X", "Y", "Z", "T^3"]))
    assert r.is_finite and r.top_degree == 2

    r = is_finite_over_A(PresentedModule.free([0]))
    assert r.verdict == "NOT_FINITE"


def test_finite_over_A_heart():
    r = is_finite_over_A(H513)
    assert r.is_finite and r.top_degree == 2


def test_finite_bound_exhaustion():
    m = cyc(0, ["X^9", "Y", "Z", "T"])
    with pytest.raises(InconclusiveError):
        is_finite_over_A(m, bound=3)


def test_submodule_from_vectors():
    m0 = cyc(0, ["X", "Y", "Z", "T^3"])
    j = submodule_from_vectors(m0, gm([0], [1], [["T"]]))
    # J = <t> inside R/(X,Y,Z,T^3): pieces k at degrees 1, 2
    assert degree_piece(j.module, 1).dim_fiber() == 1
    assert degree_piece(j.module, 2).dim_fiber() == 1
    assert degree_piece(j.module, 3).is_zero
