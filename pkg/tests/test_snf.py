from fractions import Fraction

from triadlab.pid import InvariantFactors, cokernel_invariants, smith_normal_form, solve_local
from triadlab.scalars import QQ
from triadlab.unipoly import UPoly


def up(*coeffs):
    return UPoly([Fraction(c) for c in coeffs])


def mat_mul(A, B):
    n, k = len(A), len(A[0])
    m = len(B[0])
    z = UPoly(())
    out = [[z for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = z
            for t in range(k):
                acc = acc + A[i][t] * B[t][j]
            out[i][j] = acc
    return out


def check_transform(M):
    diag, U, V, orders = smith_normal_form(M)
    prod = mat_mul(mat_mul(U, M), V)
    assert prod == [[diag[i][j] for j in range(len(diag[0]))] for i in range(len(diag))]
    # off-diagonal zero, divisibility chain on a-orders
    for i in range(len(prod)):
        for j in range(len(prod[0])):
            if i != j:
                assert prod[i][j].is_zero
    assert orders == sorted(orders)
    return diag, orders


def test_unit_detection():
    # diag(a, 1+a): 1+a is a unit of the localization
    M = [[up(0, 1), up(0)], [up(0), up(1, 1)]]
    diag, orders = check_transform(M)
    inv = cokernel_invariants(M, 2)
    assert inv == InvariantFactors(0, (1,))


def test_zero_matrix():
    M = [[up(0), up(0), up(0)], [up(0), up(0), up(0)]]
    inv = cokernel_invariants(M, 2)
    assert inv == InvariantFactors(2)


def test_column_reduction_example():
    # [[a, a^2],[0, a]] has torsion (a, a)
    M = [[up(0, 1), up(0, 0, 1)], [up(0), up(0, 1)]]
    check_transform(M)
    inv = cokernel_invariants(M, 2)
    assert inv == InvariantFactors(0, (1, 1))


def test_mixed_free_and_torsion():
    # one relation a^2 on two generators
    M = [[up(0, 0, 1)], [up(0)]]
    inv = cokernel_invariants(M, 2)
    assert inv == InvariantFactors(1, (2,))


def test_divisibility_chain_with_units():
    M = [
        [up(1, 1), up(0, 1)],
        [up(0, 1), up(0, 0, 3)],
    ]
    diag, orders = check_transform(M)
    assert orders[0] == 0


def test_solve_local():
    M = [[up(0, 1), up(0)], [up(0), up(1)]]
    # a*x0 = a^2, x1 = 3 solvable
    x = solve_local(M, [up(0, 0, 1), up(3)])
    assert x is not None
    assert (x[0] - type(x[0]).const(0)).num == up(0, 1)
    # a*x0 = 1 not solvable over the localization
    assert solve_local(M, [up(1), up(0)]) is None


def test_empty_shapes():
    assert cokernel_invariants([], 0) == InvariantFactors(0)
    assert cokernel_invariants([[]], 1) == InvariantFactors(1)
