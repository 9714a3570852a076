"""Linear algebra over k[a] localized at (a): Smith normal form, solving.

The localization is a discrete valuation ring, so pivoting on an entry of
minimal a-valuation puts any matrix in diagonal form a^{m_1} | a^{m_2} | ...
Transformations are accumulated over the localization and cleared back to
k[a] at the end; their determinants have nonzero constant term.
"""

from .scalars import QQ
from .unipoly import LocalFrac, UPoly, upoly_lcm


class InvariantFactors:
    """A finitely generated module over the DVR: free rank plus torsion."""

    __slots__ = ("rank", "torsion")

    def __init__(self, rank, torsion=()):
        self.rank = rank
        self.torsion = tuple(sorted(torsion))

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion

    @property
    def is_free(self):
        return not self.torsion

    def dim_fiber(self):
        """Dimension of (module tensor k) over k."""
        return self.rank + len(self.torsion)

    def dim_generic(self):
        """Dimension over the fraction field k(a)."""
        return self.rank

    def __eq__(self, other):
        return (
            isinstance(other, InvariantFactors)
            and self.rank == other.rank
            and self.torsion == other.torsion
        )

    def __hash__(self):
        return hash((self.rank, self.torsion))

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        if self.rank:
            parts.append(f"A^{self.rank}" if self.rank > 1 else "A")
        parts.extend(f"A/(a^{m})" if m > 1 else "A/(a)" for m in self.torsion)
        return " + ".join(parts)


def _to_local(matrix):
    return [[LocalFrac(e) for e in row] for row in matrix]


def _identity_local(n, field):
    one = LocalFrac.const(1, field)
    zero = LocalFrac.const(0, field)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def smith_normal_form(matrix, field=QQ, track=True):
    """(diagonal, U, V, orders): U*M*V = diagonal, over k[a] matrices.

    `matrix` is a list of rows of UPoly.  The diagonal entries are unit
    multiples of a^{m_i} with m_1 <= m_2 <= ...; `orders` lists the m_i.
    U and V are square k[a]-matrices invertible over the localization.
    With track=False the transforms are skipped (U and V come back None);
    only the diagonal data is produced.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    M = _to_local(matrix)
    U = _identity_local(rows, field) if track else None
    V = _identity_local(cols, field) if track else None

    def row_op(i, k, factor):
        # row_i -= factor * row_k
        Mi, Mk = M[i], M[k]
        for j in range(cols):
            if not Mk[j].is_zero:
                Mi[j] = Mi[j] - factor * Mk[j]
        if track:
            Ui, Uk = U[i], U[k]
            for j in range(rows):
                if not Uk[j].is_zero:
                    Ui[j] = Ui[j] - factor * Uk[j]

    def col_op(j, k, factor):
        for i in range(rows):
            if not M[i][k].is_zero:
                M[i][j] = M[i][j] - factor * M[i][k]
        if track:
            for i in range(cols):
                if not V[i][k].is_zero:
                    V[i][j] = V[i][j] - factor * V[i][k]

    def swap_rows(i, k):
        M[i], M[k] = M[k], M[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in M:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]

    t = 0
    orders = []
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = M[i][j].valuation()
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        val, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        pivot = M[t][t]
        for i in range(t + 1, rows):
            if not M[i][t].is_zero:
                row_op(i, t, M[i][t] / pivot)
        for j in range(t + 1, cols):
            if not M[t][j].is_zero:
                col_op(j, t, M[t][j] / pivot)
        orders.append(val)
        t += 1

    if not track:
        diag = [[M[i][j].num for j in range(cols)] for i in range(rows)]
        return diag, None, None, orders
    diag, U_poly, V_poly = _clear_denominators(M, U, V, rows, cols, field)
    return diag, U_poly, V_poly, orders


def _clear_denominators(M, U, V, rows, cols, field):
    one = UPoly.const(1, field)
    U_poly = []
    for i in range(rows):
        u = one
        for j in range(rows):
            d = U[i][j].den
            if d.degree() > 0:
                u = upoly_lcm(u, d)
        for j in range(cols):
            d = M[i][j].den
            if d.degree() > 0:
                u = upoly_lcm(u, d)
        for j in range(rows):
            U[i][j] = U[i][j] * LocalFrac(u)
        for j in range(cols):
            M[i][j] = M[i][j] * LocalFrac(u)
        U_poly.append([U[i][j].num for j in range(rows)])
    V_poly = []
    for j in range(cols):
        v = one
        for i in range(cols):
            d = V[i][j].den
            if d.degree() > 0:
                v = upoly_lcm(v, d)
        for i in range(rows):
            d = M[i][j].den
            if d.degree() > 0:
                v = upoly_lcm(v, d)
        for i in range(cols):
            V[i][j] = V[i][j] * LocalFrac(v)
        for i in range(rows):
            M[i][j] = M[i][j] * LocalFrac(v)
    for i in range(cols):
        V_poly.append([V[i][j].num for j in range(cols)])
    diag = [[M[i][j].num for j in range(cols)] for i in range(rows)]
    return diag, U_poly, V_poly


def cokernel_invariants(matrix, nrows, field=QQ):
    """Invariant factors of coker(matrix) over the localization.

    `matrix` maps relations into A^nrows; rows of the matrix are indexed
    by the generators.
    """
    if nrows == 0:
        return InvariantFactors(0)
    if not matrix or not matrix[0]:
        return InvariantFactors(nrows)
    _, _, _, orders = smith_normal_form(matrix, field, track=False)
    torsion = [m for m in orders if m > 0]
    return InvariantFactors(nrows - len(orders), torsion)


class DVRSolver:
    """Factored linear system over the localization, reusable across
    right-hand sides."""

    __slots__ = ("rows", "cols", "diag", "U", "V", "orders", "field")

    def __init__(self, matrix, field=QQ):
        self.rows = len(matrix)
        self.cols = len(matrix[0]) if self.rows else 0
        self.field = field
        if self.rows:
            self.diag, self.U, self.V, self.orders = smith_normal_form(matrix, field)
        else:
            self.diag = self.U = self.V = None
            self.orders = []

    def solve(self, rhs):
        """One solution of M x = rhs over A (rhs: LocalFrac or UPoly list)."""
        field = self.field
        if self.rows == 0:
            return []
        b = []
        for i in range(self.rows):
            acc = LocalFrac.const(0, field)
            for j in range(self.rows):
                u = self.U[i][j]
                if u.is_zero:
                    continue
                rj = rhs[j]
                if isinstance(rj, LocalFrac):
                    if rj.is_zero:
                        continue
                    acc = acc + LocalFrac(u) * rj
                else:
                    if rj.is_zero:
                        continue
                    acc = acc + LocalFrac(u * rj)
            b.append(acc)
        y = [LocalFrac.const(0, field) for _ in range(self.cols)]
        for i in range(self.rows):
            d = self.diag[i][i] if i < min(self.rows, self.cols) else None
            if d is None or d.is_zero:
                if not b[i].is_zero:
                    return None
                continue
            if b[i].is_zero:
                continue
            dv = d.ord_a()
            if b[i].valuation() < dv:
                return None
            y[i] = b[i] / LocalFrac(d)
        x = []
        for i in range(self.cols):
            acc = LocalFrac.const(0, field)
            for j in range(self.cols):
                if not y[j].is_zero and not self.V[i][j].is_zero:
                    acc = acc + LocalFrac(self.V[i][j]) * y[j]
            x.append(acc)
        return x


def solve_local(matrix, rhs, field=QQ):
    """One solution x over A of matrix*x = rhs, or None."""
    return DVRSolver(matrix, field).solve(rhs)
