"""Homotopy reduction of graded complexes: splitting off unit pivots.

An entry sitting in a degree-zero slot is a polynomial in a alone; it is a
unit of the localization A = k[a]_(a) exactly when its constant term is
nonzero.  Pivoting on such an entry removes a split exact summand.  The
Schur complement introduces denominators that are units of A; they are
cleared at the end by rescaling basis vectors (a unimodular change over
A), so the output is a complex of plain polynomial matrices again.
"""

from .gradedmatrix import GradedMatrix
from .poly import Poly
from .unipoly import UPoly, upoly_lcm


class _Entry:
    """num/den with num a Poly and den a unit univariate polynomial in a."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = UPoly.const(1, num.field)
        if num.is_zero:
            den = UPoly.const(1, num.field)
        self.num = num
        self.den = den

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_unit_slot(self):
        """Unit of A: weighted degree zero with nonzero constant term."""
        if self.num.is_zero:
            return False
        up = self.num.coeff_in_a()
        return up.is_unit_local()

    def add(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return _Entry(self.num + other.num, self.den)
        n = self.num * Poly.from_upoly(other.den) + other.num * Poly.from_upoly(self.den)
        return _Entry(n, self.den * other.den)

    def sub(self, other):
        return self.add(_Entry(-other.num, other.den))

    def mul(self, other):
        if self.is_zero or other.is_zero:
            return _Entry(Poly.zero(self.num.field))
        return _Entry(self.num * other.num, self.den * other.den)

    def div_unit(self, other):
        """Divide by a unit-slot entry."""
        q = other.num.coeff_in_a()
        return _Entry(self.num * Poly.from_upoly(other.den), self.den * q)


class _Stage:
    __slots__ = ("tgt", "src", "rows", "field")

    def __init__(self, matrix):
        self.tgt = list(matrix.tgt_twists)
        self.src = list(matrix.src_twists)
        self.rows = [[_Entry(e) for e in row] for row in matrix.rows]
        self.field = matrix.field

    def find_pivot(self):
        for i, ti in enumerate(self.tgt):
            for j, sj in enumerate(self.src):
                if sj == ti and self.rows[i][j].is_unit_slot():
                    return i, j
        return None

    def schur(self, r, c):
        p = self.rows[r][c]
        col = [self.rows[i][c] for i in range(len(self.tgt))]
        row = [self.rows[r][j] for j in range(len(self.src))]
        keep_r = [i for i in range(len(self.tgt)) if i != r]
        keep_c = [j for j in range(len(self.src)) if j != c]
        new_rows = []
        for i in keep_r:
            out = []
            for j in keep_c:
                e = self.rows[i][j]
                corr = col[i].mul(row[j]).div_unit(p)
                out.append(e.sub(corr))
            new_rows.append(out)
        self.rows = new_rows
        self.tgt = [self.tgt[i] for i in keep_r]
        self.src = [self.src[j] for j in keep_c]

    def delete_row(self, r):
        self.rows = [row for i, row in enumerate(self.rows) if i != r]
        self.tgt = [t for i, t in enumerate(self.tgt) if i != r]

    def delete_col(self, c):
        self.rows = [[e for j, e in enumerate(row) if j != c] for row in self.rows]
        self.src = [s for j, s in enumerate(self.src) if j != c]

    def scale_col(self, j, up):
        for row in self.rows:
            e = row[j]
            if e.is_zero:
                continue
            extra = up // e.den
            row[j] = _Entry(e.num * Poly.from_upoly(extra))

    def push_den_to_row(self, i, up):
        for j in range(len(self.src)):
            e = self.rows[i][j]
            if not e.is_zero:
                self.rows[i][j] = _Entry(e.num, e.den * up)

    def to_matrix(self):
        rows = []
        for row in self.rows:
            out = []
            for e in row:
                if not e.is_zero and e.den.degree() > 0:
                    raise AssertionError("uncleaned denominator")
                if not e.is_zero and e.den != UPoly.const(1, self.field):
                    out.append(e.num.scale(self.field(1) / e.den.at_zero()))
                else:
                    out.append(e.num)
            rows.append(out)
        return GradedMatrix(self.tgt, self.src, rows, self.field)


def minimalize(maps, active=None):
    """Reduce a complex [d_1, d_2, ...] with d_k : F_k -> F_{k-1}.

    Pivots are taken only in the stages listed in `active` (map indices,
    default all).  Returns the reduced list; modules attached to inactive
    stages can still lose basis vectors when an adjacent active stage
    pivots against them, except that pivoting in stage k never touches the
    *target* of stage k-1's target (the bottom module of the complex only
    changes if stage 0 is active).
    """
    if not maps:
        return []
    field = maps[0].field
    stages = [_Stage(m) for m in maps]
    if active is None:
        active = range(len(stages))
    active = set(active)

    for s in sorted(active):
        st = stages[s]
        while True:
            hit = st.find_pivot()
            if hit is None:
                break
            r, c = hit
            st.schur(r, c)
            if s + 1 < len(stages):
                stages[s + 1].delete_row(c)
            if s - 1 >= 0:
                stages[s - 1].delete_col(r)

    one = UPoly.const(1, field)
    for s, st in enumerate(stages):
        for j in range(len(st.src)):
            u = one
            for row in st.rows:
                e = row[j]
                if not e.is_zero and e.den.degree() > 0:
                    u = upoly_lcm(u, e.den)
            if u.degree() == 0:
                continue
            st.scale_col(j, u)
            if s + 1 < len(stages):
                stages[s + 1].push_den_to_row(j, u)

    return [st.to_matrix() for st in stages]
