"""Homogeneous matrices between twisted free modules, and module presentations.

A matrix row belongs to a target generator, a column to a source
generator; the entry in row i, column j must be homogeneous of weighted
degree  src_twist[j] - tgt_twist[i].  When that number is negative the
entry is forced to be zero.
"""

from .chiffres import Chiffres
from .errors import ShapeError
from .poly import Poly
from .scalars import QQ


class GradedMatrix:
    """Dense homogeneous matrix with explicit twist lists on both sides."""

    __slots__ = ("tgt_twists", "src_twists", "rows", "field")

    def __init__(self, tgt_twists, src_twists, rows, field=QQ):
        self.tgt_twists = tuple(tgt_twists)
        self.src_twists = tuple(src_twists)
        if len(rows) != len(self.tgt_twists):
            raise ShapeError("row count does not match target rank")
        for r in rows:
            if len(r) != len(self.src_twists):
                raise ShapeError("column count does not match source rank")
        self.rows = tuple(tuple(r) for r in rows)
        self.field = field

    @classmethod
    def zero(cls, tgt_twists, src_twists, field=QQ):
        z = Poly.zero(field)
        rows = [[z] * len(src_twists) for _ in tgt_twists]
        return cls(tgt_twists, src_twists, rows, field)

    @classmethod
    def identity(cls, twists, field=QQ):
        z = Poly.zero(field)
        one = Poly.const(1, field)
        n = len(twists)
        rows = [[one if i == j else z for j in range(n)] for i in range(n)]
        return cls(twists, twists, rows, field)

    @classmethod
    def from_columns(cls, tgt_twists, columns, src_twists, field=QQ):
        z = Poly.zero(field)
        rows = [
            [col.get(i, z) for col in columns] for i in range(len(tgt_twists))
        ]
        return cls(tgt_twists, src_twists, rows, field)

    @property
    def nrows(self):
        return len(self.tgt_twists)

    @property
    def ncols(self):
        return len(self.src_twists)

    def entry(self, i, j):
        return self.rows[i][j]

    def source(self):
        return Chiffres.from_twists(self.src_twists)

    def target(self):
        return Chiffres.from_twists(self.tgt_twists)

    def column(self, j):
        """Column j as a sparse vector {row_index: Poly}."""
        return {i: self.rows[i][j] for i in range(self.nrows) if self.rows[i][j]}

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def check(self):
        """Degree-rule violations, one (row, col, message) per bad entry."""
        out = []
        for i, ti in enumerate(self.tgt_twists):
            for j, sj in enumerate(self.src_twists):
                e = self.rows[i][j]
                if e.is_zero:
                    continue
                want = sj - ti
                if want < 0:
                    out.append((i, j, f"entry must vanish (degree {want})"))
                elif not e.is_homogeneous() or e.wdeg() != want:
                    out.append((i, j, f"entry not homogeneous of degree {want}"))
        return out

    def is_valid(self):
        return not self.check()

    def mul(self, other):
        """Matrix product self * other (self.source must match other.target)."""
        if self.src_twists != other.tgt_twists:
            raise ShapeError("twist lists do not compose")
        z = Poly.zero(self.field)
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    b = other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMatrix(self.tgt_twists, other.src_twists, rows, self.field)

    def apply(self, vec):
        """Apply to a sparse column vector {src_index: Poly}."""
        z = Poly.zero(self.field)
        out = {}
        for j, p in vec.items():
            if not p:
                continue
            for i in range(self.nrows):
                e = self.rows[i][j]
                if e:
                    out[i] = out.get(i, z) + e * p
        return {i: p for i, p in out.items() if p}

    def is_zero(self):
        return all(e.is_zero for row in self.rows for e in row)

    def neg(self):
        return GradedMatrix(
            self.tgt_twists,
            self.src_twists,
            [[-e for e in row] for row in self.rows],
            self.field,
        )

    def hstack(self, other):
        """[self | other]: same target, concatenated sources."""
        if self.tgt_twists != other.tgt_twists:
            raise ShapeError("targets differ")
        rows = [r1 + r2 for r1, r2 in zip(self.rows, other.rows)]
        return GradedMatrix(
            self.tgt_twists, self.src_twists + other.src_twists, rows, self.field
        )

    def delete(self, drop_rows=(), drop_cols=()):
        drop_rows, drop_cols = set(drop_rows), set(drop_cols)
        keep_r = [i for i in range(self.nrows) if i not in drop_rows]
        keep_c = [j for j in range(self.ncols) if j not in drop_cols]
        rows = [[self.rows[i][j] for j in keep_c] for i in keep_r]
        return GradedMatrix(
            [self.tgt_twists[i] for i in keep_r],
            [self.src_twists[j] for j in keep_c],
            rows,
            self.field,
        )

    def select_columns(self, cols):
        rows = [[self.rows[i][j] for j in cols] for i in range(self.nrows)]
        return GradedMatrix(
            self.tgt_twists, [self.src_twists[j] for j in cols], rows, self.field
        )

    def specialize_a(self, value=None):
        rows = [[e.specialize_a(value) for e in row] for row in self.rows]
        return GradedMatrix(self.tgt_twists, self.src_twists, rows, self.field)

    def twisted(self, h):
        """Same entries between modules twisted by h."""
        return GradedMatrix(
            [t - h for t in self.tgt_twists],
            [s - h for s in self.src_twists],
            self.rows,
            self.field,
        )

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and self.tgt_twists == other.tgt_twists
            and self.src_twists == other.src_twists
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.tgt_twists, self.src_twists, self.rows))

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(repr(e) for e in row) + "]" for row in self.rows
        )
        return f"GradedMatrix({self.source()!r} -> {self.target()!r}: {body})"


def block_matrix(blocks, tgt_twists_list, src_twists_list, field=QQ):
    """Assemble a matrix from a 2D grid of optional GradedMatrix blocks.

    blocks[i][j] maps source block j into target block i; None is zero.
    """
    tgt = [t for ts in tgt_twists_list for t in ts]
    src = [s for ss in src_twists_list for s in ss]
    z = Poly.zero(field)
    rows = [[z] * len(src) for _ in tgt]
    r0 = 0
    for bi, ts in enumerate(tgt_twists_list):
        c0 = 0
        for bj, ss in enumerate(src_twists_list):
            blk = blocks[bi][bj]
            if blk is not None:
                if blk.nrows != len(ts) or blk.ncols != len(ss):
                    raise ShapeError("block shape mismatch")
                for i in range(blk.nrows):
                    for j in range(blk.ncols):
                        rows[r0 + i][c0 + j] = blk.rows[i][j]
            c0 += len(ss)
        r0 += len(ts)
    return GradedMatrix(tgt, src, rows, field)


def direct_sum(m1, m2):
    return block_matrix(
        [[m1, None], [None, m2]],
        [m1.tgt_twists, m2.tgt_twists],
        [m1.src_twists, m2.src_twists],
        m1.field,
    )


class PresentedModule:
    """Finitely generated graded module given as the cokernel of a matrix.

    Generators are the target twists of the presentation; the columns are
    the relations.  Gröbner data for the relation submodule is cached
    lazily.
    """

    __slots__ = ("presentation", "_gb")

    def __init__(self, presentation):
        self.presentation = presentation
        self._gb = None

    @classmethod
    def from_relations(cls, gen_twists, relation_columns, rel_twists, field=QQ):
        mat = GradedMatrix.from_columns(gen_twists, relation_columns, rel_twists, field)
        return cls(mat)

    @classmethod
    def free(cls, twists, field=QQ):
        return cls(GradedMatrix(twists, [], [[] for _ in twists], field))

    @classmethod
    def cyclic(cls, twist, relation_polys, field=QQ):
        """B(-twist) / (relation polynomials)."""
        cols = [{0: p} for p in relation_polys if p]
        rel_twists = [p.wdeg() + twist for p in relation_polys if p]
        return cls.from_relations([twist], cols, rel_twists, field)

    @classmethod
    def zero(cls, field=QQ):
        return cls.free([], field)

    @property
    def field(self):
        return self.presentation.field

    @property
    def gen_twists(self):
        return self.presentation.tgt_twists

    def generators(self):
        return Chiffres.from_twists(self.gen_twists)

    def relation_gb(self):
        if self._gb is None:
            from .groebner import groebner_basis

            self._gb = groebner_basis(
                self.presentation.columns(), self.gen_twists, field=self.field
            )
        return self._gb

    def reduce(self, vec):
        """Normal form of a vector of the ambient free module modulo relations."""
        from .groebner import normal_form

        return normal_form(vec, self.relation_gb())

    def element_is_zero(self, vec):
        return not self.reduce(vec)

    def __repr__(self):
        return f"PresentedModule(gens={self.generators()!r}, rels={self.presentation.source()!r})"
