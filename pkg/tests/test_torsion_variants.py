"""Hearts with the same fiber data but different torsion annihilators.

Two deformations of the same quotient flag can differ in how deep the
a-torsion of the heart runs: one heart has its torsion killed by a, the
"compacted" variant only by a^2.  The degree pieces and saturation see
the difference exactly.
"""

from triadlab.gradedmatrix import PresentedModule
from triadlab.pid import InvariantFactors
from triadlab.pieces import degree_piece, torsion_saturation
from triadlab.poly import parse_poly


def cyc(twist, rels):
    return PresentedModule.cyclic(twist, [parse_poly(r) for r in rels])


H_PRIME = cyc(0, ["X", "Y", "a*Z", "Z^2", "a*T^2", "T^3"])
H_DOUBLE = cyc(0, ["X", "Y", "a*Z", "Z^2+a*T^2", "T^3"])


def test_torsion_orders_distinguish_the_variants():
    # both have a free rank-one piece in degrees 0 and 1 plus Z-torsion
    assert degree_piece(H_PRIME, 0) == InvariantFactors(1)
    assert degree_piece(H_PRIME, 1) == InvariantFactors(1, (1,))
    # degree 2: two order-one torsion slots in the first variant; the
    # compacted one deepens a slot to order two (Z^2 = -aT^2 there)
    assert degree_piece(H_PRIME, 2) == InvariantFactors(0, (1, 1))
    assert degree_piece(H_DOUBLE, 2) == InvariantFactors(0, (1, 2))
    # the fiber dimensions agree with the common special module in both
    for h in (H_PRIME, H_DOUBLE):
        assert [degree_piece(h, n).dim_fiber() for n in range(4)] == [1, 2, 2, 1]


def test_saturation_depth():
    # the first torsion submodule is killed by a ...
    tors1 = torsion_saturation(H_PRIME)
    assert not tors1.is_zero
    gb = tors1.module.relation_gb()
    from triadlab.groebner import normal_form

    a = parse_poly("a")
    for j in range(len(tors1.module.gen_twists)):
        assert not normal_form({j: a}, gb)
    # ... the compacted one needs a^2 on some generator
    tors2 = torsion_saturation(H_DOUBLE)
    assert not tors2.is_zero
    gb2 = tors2.module.relation_gb()
    a2 = parse_poly("a^2")
    killed_by_a = [
        not normal_form({j: a}, gb2) for j in range(len(tors2.module.gen_twists))
    ]
    assert not all(killed_by_a)
    for j in range(len(tors2.module.gen_twists)):
        assert not normal_form({j: a2}, gb2)
