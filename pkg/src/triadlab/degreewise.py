"""Degree-wise models: modules finite over the DVR, one piece per degree.

A DegreewiseModule records, for each degree in a window, the structure of
the piece (free slots and torsion slots A/(a^m)) and, for each of
X,Y,Z,T, the matrix of the action into the next piece.  Entries live in
the localization; torsion coordinates are kept reduced modulo their
annihilator.  Complexes of such modules realize the truncations and dual
triads; triad terms always have free pieces (the complexes are adequate),
torsion appears only when reporting homology.
"""

from .errors import FinitenessError, NotAComplexError, ShapeError
from .pid import InvariantFactors, cokernel_invariants, smith_normal_form, solve_local
from .pieces import is_finite_over_A, piece_basis, piece_matrix
from .poly import Poly
from .unipoly import LocalFrac, UPoly, upoly_lcm

VAR_INDICES = (1, 2, 3, 4)


# ---------------------------------------------------------------- matrices

def lf_zero(field):
    return LocalFrac.const(0, field)


def lmat_from_upoly(rows):
    return [[LocalFrac(e) for e in row] for row in rows]


def lmat_zero(nr, nc, field):
    z = lf_zero(field)
    return [[z for _ in range(nc)] for _ in range(nr)]


def lmat_mul(A, B, field):
    nr = len(A)
    mid = len(B)
    nc = len(B[0]) if mid else 0
    out = lmat_zero(nr, nc, field)
    for i in range(nr):
        row = A[i]
        for k in range(mid):
            aik = row[k]
            if aik.is_zero:
                continue
            brow = B[k]
            for j in range(nc):
                if not brow[j].is_zero:
                    out[i][j] = out[i][j] + aik * brow[j]
    return out


def lmat_sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def lmat_is_zero_mod(A, orders):
    for i, row in enumerate(A):
        m = orders[i] if i < len(orders) else None
        for e in row:
            if e.is_zero:
                continue
            if m is None:
                return False
            if not e.reduce_mod(m).is_zero:
                return False
    return True


def _column_scales(A, field):
    """Unit that clears the denominators of each column."""
    nr = len(A)
    nc = len(A[0]) if nr else 0
    one = UPoly.const(1, field)
    scales = []
    for j in range(nc):
        u = one
        for i in range(nr):
            d = A[i][j].den
            if d.degree() > 0:
                u = upoly_lcm(u, d)
        scales.append(u)
    return scales


def lmat_clear_columns(A, field):
    """Scale each column into k[a]; the column span over A is unchanged."""
    if not A:
        return []
    scales = _column_scales(A, field)
    out = []
    for row in A:
        new = []
        for j, e in enumerate(row):
            v = e * LocalFrac(scales[j])
            if v.den.degree() > 0:
                raise AssertionError("column clearing failed")
            num = v.num
            if not num.is_zero and v.den.at_zero() != field(1):
                num = num.scale(field(1) / v.den.at_zero())
            new.append(num)
        out.append(new)
    return out


def lmat_cokernel_invariants(A, nrows, field):
    if nrows == 0:
        return InvariantFactors(0)
    if not A or not A[0]:
        return InvariantFactors(nrows)
    return cokernel_invariants(lmat_clear_columns(A, field), nrows, field)


def lmat_kernel_basis(A, field, ncols=None):
    """Columns generating ker(A) over the localization (free source)."""
    nr = len(A)
    if ncols is None:
        ncols = len(A[0]) if nr else 0
    if nr == 0 or ncols == 0 or all(e.is_zero for row in A for e in row):
        return [
            [LocalFrac.const(1 if i == j else 0, field) for i in range(ncols)]
            for j in range(ncols)
        ]
    cleared = lmat_clear_columns(A, field)
    scales = _column_scales(A, field)
    _, _, V, orders = smith_normal_form(cleared, field)
    rank = len(orders)
    out = []
    for j in range(rank, ncols):
        # kernel vector of the cleared matrix; undo the column scaling
        out.append([LocalFrac(V[i][j]) * LocalFrac(scales[i]) for i in range(ncols)])
    return out


class LMatSolver:
    """Reusable solver for a LocalFrac matrix over the localization."""

    __slots__ = ("field", "nrows", "ncols", "scales", "inner")

    def __init__(self, A, field, ncols=None):
        from .pid import DVRSolver

        self.field = field
        self.nrows = len(A)
        self.ncols = ncols if ncols is not None else (len(A[0]) if A else 0)
        if self.nrows:
            self.scales = _column_scales(A, field)
            self.inner = DVRSolver(lmat_clear_columns(A, field), field)
        else:
            self.scales = []
            self.inner = None

    def solve(self, rhs):
        field = self.field
        if self.nrows == 0:
            return []
        u = UPoly.const(1, field)
        for e in rhs:
            if e.den.degree() > 0:
                u = upoly_lcm(u, e.den)
        lu = LocalFrac(u)
        rhs_up = []
        for e in rhs:
            v = e * lu
            rhs_up.append(v.num if not v.is_zero else UPoly((), field))
        x = self.inner.solve(rhs_up)
        if x is None:
            return None
        inv_u = LocalFrac(UPoly.const(1, field)) / lu
        return [x[i] * LocalFrac(self.scales[i]) * inv_u for i in range(self.ncols)]


def lmat_solve(A, rhs, field):
    """Solve A x = rhs over the localization; None when impossible."""
    return LMatSolver(A, field).solve(rhs)


def lmat_rank_generic(A, field):
    """Rank over the fraction field k(a)."""
    if not A or not A[0]:
        return 0
    _, _, _, orders = smith_normal_form(lmat_clear_columns(A, field), field)
    return len(orders)


def lmat_fiber(A, field):
    """Constant-term matrix: each entry evaluated at a = 0."""
    out = []
    for row in A:
        out.append(
            [
                (e.num.at_zero() / e.den.at_zero()) if not e.is_zero else field(0)
                for e in row
            ]
        )
    return out


def scalar_rank(M, field):
    if not M or not M[0]:
        return 0
    rows = [list(r) for r in M]
    nr, nc = len(rows), len(rows[0])
    rank = 0
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(nr):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def _transpose(mat):
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    return [[mat[i][j] for i in range(nr)] for j in range(nc)]


# ----------------------------------------------------------------- modules

class DegreewiseModule:
    """Pieces with slot orders (None = free, m = A/(a^m)) and actions."""

    __slots__ = ("lo", "hi", "orders", "actions", "field", "labels")

    def __init__(self, lo, hi, orders, actions, field, labels=None):
        self.lo = lo
        self.hi = hi
        self.orders = dict(orders)
        self.actions = actions
        self.field = field
        self.labels = labels or {}

    def piece_orders(self, n):
        return self.orders.get(n, ())

    def dim(self, n):
        return len(self.piece_orders(n))

    def invariants(self, n):
        ords = self.piece_orders(n)
        return InvariantFactors(
            sum(1 for m in ords if m is None), [m for m in ords if m is not None]
        )

    def action(self, v, n):
        mat = self.actions.get(v, {}).get(n)
        if mat is None:
            return lmat_zero(self.dim(n + 1), self.dim(n), self.field)
        return mat

    def is_free_pieced(self):
        return all(m is None for ords in self.orders.values() for m in ords)

    def check_commuting(self):
        for n in range(self.lo, self.hi - 1):
            for v in VAR_INDICES:
                for w in VAR_INDICES:
                    if w <= v:
                        continue
                    left = lmat_mul(
                        self.action(w, n + 1), self.action(v, n), self.field
                    )
                    right = lmat_mul(
                        self.action(v, n + 1), self.action(w, n), self.field
                    )
                    if not lmat_is_zero_mod(
                        lmat_sub(left, right), self.piece_orders(n + 2)
                    ):
                        return False
        return True

    def hilbert(self):
        return {
            n: self.invariants(n)
            for n in range(self.lo, self.hi + 1)
            if self.dim(n)
        }

    def chiffres_guess(self):
        """For free-pieced modules arising from twists: None (not tracked)."""
        return None


class DegreewiseComplex:
    """Three degreewise terms and degree-preserving differentials."""

    __slots__ = ("m1", "m0", "mm1", "d1", "d0", "field")

    def __init__(self, m1, m0, mm1, d1, d0, field, check=True):
        self.m1 = m1
        self.m0 = m0
        self.mm1 = mm1
        self.d1 = d1
        self.d0 = d0
        self.field = field
        if check and not self.is_complex():
            raise NotAComplexError("degreewise d0 . d1 != 0")

    @property
    def lo(self):
        return min(self.m1.lo, self.m0.lo, self.mm1.lo)

    @property
    def hi(self):
        return max(self.m1.hi, self.m0.hi, self.mm1.hi)

    def diff1(self, n):
        mat = self.d1.get(n)
        if mat is None:
            return lmat_zero(self.m0.dim(n), self.m1.dim(n), self.field)
        return mat

    def diff0(self, n):
        mat = self.d0.get(n)
        if mat is None:
            return lmat_zero(self.mm1.dim(n), self.m0.dim(n), self.field)
        return mat

    def is_complex(self):
        for n in range(self.lo, self.hi + 1):
            prod = lmat_mul(self.diff0(n), self.diff1(n), self.field)
            if not lmat_is_zero_mod(prod, self.mm1.piece_orders(n)):
                return False
        return True

    def check_differentials_commute(self):
        for n in range(self.lo, self.hi):
            for v in VAR_INDICES:
                for src, tgt, d in (
                    (self.m1, self.m0, self.diff1),
                    (self.m0, self.mm1, self.diff0),
                ):
                    left = lmat_mul(d(n + 1), src.action(v, n), self.field)
                    right = lmat_mul(tgt.action(v, n), d(n), self.field)
                    if not lmat_is_zero_mod(
                        lmat_sub(left, right), tgt.piece_orders(n + 1)
                    ):
                        return False
        return True

    def heart_invariants(self, n):
        """ker(d0_n)/im(d1_n) over the DVR (free pieces assumed)."""
        kern = lmat_kernel_basis(self.diff0(n), self.field, ncols=self.m0.dim(n))
        if not kern:
            return InvariantFactors(0)
        K = _transpose(kern)
        solver = LMatSolver(K, self.field)
        d1 = self.diff1(n)
        cols = []
        for j in range(self.m1.dim(n)):
            rhs = [d1[i][j] for i in range(self.m0.dim(n))]
            y = solver.solve(rhs)
            if y is None:
                raise NotAComplexError("im d1 does not lie in ker d0")
            cols.append(y)
        lift = _transpose(cols) if cols else []
        return lmat_cokernel_invariants(lift, len(kern), self.field)

    def cokernel_invariants_at(self, n):
        return lmat_cokernel_invariants(self.diff0(n), self.mm1.dim(n), self.field)

    def coker_d1_invariants_at(self, n):
        return lmat_cokernel_invariants(self.diff1(n), self.m0.dim(n), self.field)

    def fiber_special_dim(self, n):
        """dim_k h_0( . tensor k) at degree n (free pieces)."""
        d0 = lmat_fiber(self.diff0(n), self.field)
        d1 = lmat_fiber(self.diff1(n), self.field)
        return self.m0.dim(n) - scalar_rank(d0, self.field) - scalar_rank(d1, self.field)

    def fiber_generic_dim(self, n):
        """dim_{k(a)} h_0( . tensor k(a)) at degree n."""
        return (
            self.m0.dim(n)
            - lmat_rank_generic(self.diff0(n), self.field)
            - lmat_rank_generic(self.diff1(n), self.field)
        )

    def is_modular(self):
        """C flat over A: every cokernel piece torsion-free."""
        return all(
            self.cokernel_invariants_at(n).is_free
            for n in range(self.lo, self.hi + 1)
        )

    def is_representable(self):
        """E = coker d1 flat over A piece by piece."""
        return all(
            self.coker_d1_invariants_at(n).is_free
            for n in range(self.lo, self.hi + 1)
        )


# --------------------------------------------------- free-term constructors

def free_term_degreewise(twists, lo, hi, field):
    """Degreewise model of a dissocié module: monomial bases, 0/1 actions."""
    orders, labels = {}, {}
    actions = {v: {} for v in VAR_INDICES}
    for n in range(lo, hi + 1):
        basis = piece_basis(twists, n)
        orders[n] = tuple(None for _ in basis)
        labels[n] = basis
    for n in range(lo, hi):
        tgt_index = {lab: i for i, lab in enumerate(labels[n + 1])}
        for v in VAR_INDICES:
            mat = lmat_zero(len(labels[n + 1]), len(labels[n]), field)
            for j, (comp, mono) in enumerate(labels[n]):
                bumped = tuple(e + (1 if k == v else 0) for k, e in enumerate(mono))
                i = tgt_index.get((comp, bumped))
                if i is not None:
                    mat[i][j] = LocalFrac.const(1, field)
            actions[v][n] = mat
    return DegreewiseModule(lo, hi, orders, actions, field, labels)


def truncate_complex3(c, lo, hi):
    """Degreewise model of a Complex3 over [lo, hi]."""
    field = c.field
    m1 = free_term_degreewise(c.l1_twists, lo, hi, field)
    m0 = free_term_degreewise(c.l0_twists, lo, hi, field)
    mm1 = free_term_degreewise(c.lm1_twists, lo, hi, field)
    d1, d0 = {}, {}
    for n in range(lo, hi + 1):
        d1[n] = lmat_from_upoly(piece_matrix(c.d1, n)[0])
        d0[n] = lmat_from_upoly(piece_matrix(c.d0, n)[0])
    return DegreewiseComplex(m1, m0, mm1, d1, d0, field, check=False)


def truncate_internal(c, mode, r, hi=None):
    """Internal-degree truncation of a Complex3.

    mode "le": the degreewise complex of pieces in degrees <= r.
    mode "gt": the complex unchanged when r is below every generator
    degree; the generator-span subcomplex when that span is closed under
    the differentials; otherwise the degreewise form over [r+1, hi]
    (a window is required since free pieces are unbounded above).
    """
    if mode == "le":
        lo = c.min_twist()
        if lo is None or lo > r:
            return truncate_complex3(c, r, r)
        return truncate_complex3(c, lo, r)
    if mode != "gt":
        raise ValueError("mode must be 'le' or 'gt'")
    lo = c.min_twist()
    if lo is None or r < lo:
        return c
    keep1 = [j for j, t in enumerate(c.l1_twists) if t > r]
    keep0 = [j for j, t in enumerate(c.l0_twists) if t > r]
    stable = all(
        c.d1.rows[i][j].is_zero
        for i, t in enumerate(c.l0_twists)
        if t <= r
        for j in keep1
    ) and all(
        c.d0.rows[i][j].is_zero
        for i, t in enumerate(c.lm1_twists)
        if t <= r
        for j in keep0
    )
    if stable:
        from .complexes import Complex3

        d1 = c.d1.delete(
            drop_rows=[i for i, t in enumerate(c.l0_twists) if t <= r],
            drop_cols=[j for j, t in enumerate(c.l1_twists) if t <= r],
        )
        d0 = c.d0.delete(
            drop_rows=[i for i, t in enumerate(c.lm1_twists) if t <= r],
            drop_cols=[j for j, t in enumerate(c.l0_twists) if t <= r],
        )
        return Complex3(d1, d0, check=False)
    if hi is None:
        raise ShapeError(
            "(>r) truncation is not a free subcomplex; supply a degree window"
        )
    return truncate_complex3(c, r + 1, hi)


# ------------------------------------------------------------------- duals

def dual_free_module_degreewise(twists, lo, hi, field):
    """Restricted dual of a dissocié module: piece at n is (M_{-n})^*."""
    orders, labels = {}, {}
    actions = {v: {} for v in VAR_INDICES}
    for n in range(lo, hi + 1):
        basis = piece_basis(twists, -n)
        orders[n] = tuple(None for _ in basis)
        labels[n] = basis
    for n in range(lo, hi):
        # dual action at n is the transpose of mult: M_{-n-1} -> M_{-n}
        src_index = {lab: i for i, lab in enumerate(labels[n])}
        for v in VAR_INDICES:
            mat = lmat_zero(len(labels[n + 1]), len(labels[n]), field)
            for j, (comp, mono) in enumerate(labels[n + 1]):
                bumped = tuple(e + (1 if k == v else 0) for k, e in enumerate(mono))
                i = src_index.get((comp, bumped))
                if i is not None:
                    mat[j][i] = LocalFrac.const(1, field)
            actions[v][n] = mat
    return DegreewiseModule(lo, hi, orders, actions, field, labels)


def dual_truncated(c, r, hi=None):
    """(L.*)_{>r} of a free Complex3, as a DegreewiseComplex.

    The terms reverse order; the degree-n piece of the dual of B(-m) is
    free of rank equal to the monomial count in degree -n-m, with the
    contragredient actions and transposed differentials.  Pieces vanish
    above -min(generator twists), so the window is finite.
    """
    field = c.field
    tops = [-min(tw) for tw in (c.l1_twists, c.l0_twists, c.lm1_twists) if tw]
    top = max(tops) if tops else r
    if hi is not None:
        top = hi
    lo = r + 1
    if top < lo:
        top = lo
    m1 = dual_free_module_degreewise(c.lm1_twists, lo, top, field)
    m0 = dual_free_module_degreewise(c.l0_twists, lo, top, field)
    mm1 = dual_free_module_degreewise(c.l1_twists, lo, top, field)
    d1, d0 = {}, {}
    for n in range(lo, top + 1):
        d1[n] = _transpose(lmat_from_upoly(piece_matrix(c.d0, -n)[0]))
        d0[n] = _transpose(lmat_from_upoly(piece_matrix(c.d1, -n)[0]))
    return DegreewiseComplex(m1, m0, mm1, d1, d0, field, check=False)


def dual_degreewise_complex(dc):
    """Full dual of a degreewise complex with free pieces; involutive."""
    for term in (dc.m1, dc.m0, dc.mm1):
        if not term.is_free_pieced():
            raise ShapeError("duality needs flat (free) pieces")
    field = dc.field

    def dual_term(term):
        lo, hi = -term.hi, -term.lo
        orders = {
            n: tuple(None for _ in term.piece_orders(-n)) for n in range(lo, hi + 1)
        }
        actions = {v: {} for v in VAR_INDICES}
        for v in VAR_INDICES:
            for n in range(lo, hi):
                actions[v][n] = _transpose(term.action(v, -n - 1))
        return DegreewiseModule(lo, hi, orders, actions, field)

    m1 = dual_term(dc.mm1)
    m0 = dual_term(dc.m0)
    mm1 = dual_term(dc.m1)
    lo = min(m1.lo, m0.lo, mm1.lo)
    hi = max(m1.hi, m0.hi, mm1.hi)
    d1 = {n: _transpose(dc.diff0(-n)) for n in range(lo, hi + 1)}
    d0 = {n: _transpose(dc.diff1(-n)) for n in range(lo, hi + 1)}
    return DegreewiseComplex(m1, m0, mm1, d1, d0, field, check=False)


def complexes_equivalent(dc1, dc2):
    """Structural equality: piece invariants and action/differential SNFs."""

    def action_orders(term, v, n):
        mat = term.action(v, n)
        if not mat or not mat[0]:
            return ()
        cleared = lmat_clear_columns(mat, term.field)
        _, _, _, orders = smith_normal_form(cleared, term.field)
        return tuple(orders)

    terms1 = (dc1.m1, dc1.m0, dc1.mm1)
    terms2 = (dc2.m1, dc2.m0, dc2.mm1)
    lo = min(dc1.lo, dc2.lo)
    hi = max(dc1.hi, dc2.hi)
    for t1, t2 in zip(terms1, terms2):
        for n in range(lo, hi + 1):
            if t1.invariants(n) != t2.invariants(n):
                return False
            for v in VAR_INDICES:
                if action_orders(t1, v, n) != action_orders(t2, v, n):
                    return False
    def diff_orders(mat, field):
        if not mat or not mat[0]:
            return ()
        return tuple(smith_normal_form(lmat_clear_columns(mat, field), field)[3])

    for n in range(lo, hi + 1):
        if diff_orders(dc1.diff1(n), dc1.field) != diff_orders(dc2.diff1(n), dc2.field):
            return False
        if diff_orders(dc1.diff0(n), dc1.field) != diff_orders(dc2.diff0(n), dc2.field):
            return False
    return True


# ------------------------------------------- presented <-> degreewise

class _Frame:
    """SNF coordinates of one degree piece of a presented module."""

    __slots__ = ("labels", "U", "sel")

    def __init__(self, labels, U, sel):
        self.labels = labels
        self.U = U
        self.sel = sel  # [(snf row, order or None)], free slots first


def _piece_frame(m, n):
    mat, nrows = piece_matrix(m.presentation, n)
    labels = piece_basis(m.presentation.tgt_twists, n)
    field = m.field
    if nrows == 0:
        return _Frame(labels, [], [])
    if not mat or not mat[0]:
        U = [
            [UPoly.const(1 if i == j else 0, field) for j in range(nrows)]
            for i in range(nrows)
        ]
        return _Frame(labels, U, [(i, None) for i in range(nrows)])
    _, U, _, orders = smith_normal_form(mat, field)
    sel = [(i, None) for i in range(len(orders), nrows)]
    sel.extend((i, o) for i, o in enumerate(orders) if o > 0)
    return _Frame(labels, U, sel)


def _coords_in_frame(frame, vec_lf, field):
    out = []
    for i, order in frame.sel:
        acc = lf_zero(field)
        for j, w in enumerate(vec_lf):
            if w.is_zero:
                continue
            u = frame.U[i][j]
            if not u.is_zero:
                acc = acc + LocalFrac(u) * w
        if order is not None and not acc.is_zero:
            acc = LocalFrac(acc.reduce_mod(order))
        out.append(acc)
    return out


def _representatives(frame, field):
    """Monomial-coordinate vectors over A realizing the frame basis."""
    from .pid import DVRSolver

    nrows = len(frame.labels)
    if not frame.sel:
        return []
    solver = DVRSolver(frame.U, field)
    reps = []
    for i, _ in frame.sel:
        rhs = [UPoly.const(1 if k == i else 0, field) for k in range(nrows)]
        x = solver.solve(rhs)
        if x is None:
            raise AssertionError("frame transform is not invertible over A")
        reps.append(x)
    return reps


def _shift_lf_vector(vec, labels, labels_next, v, field):
    idx = {lab: i for i, lab in enumerate(labels_next)}
    out = [lf_zero(field) for _ in labels_next]
    for j, coef in enumerate(vec):
        if coef.is_zero:
            continue
        comp, mono = labels[j]
        bumped = tuple(e + (1 if k == v else 0) for k, e in enumerate(mono))
        out[idx[(comp, bumped)]] = out[idx[(comp, bumped)]] + coef
    return out


def degreewise_from_presented(m, lo, hi):
    """Degreewise model of a module finite over A, supported inside [lo, hi]."""
    report = is_finite_over_A(m)
    if not report.is_finite:
        raise FinitenessError("module is not finite over the DVR")
    if report.top_degree is not None and report.top_degree > hi:
        raise FinitenessError("module is nonzero above the window")
    gen_lo = min(m.presentation.tgt_twists, default=lo)
    if gen_lo < lo:
        from .pieces import degree_piece

        for n in range(gen_lo, lo):
            if not degree_piece(m, n).is_zero:
                raise FinitenessError("module is nonzero below the window")
    field = m.field
    frames = {n: _piece_frame(m, n) for n in range(lo, hi + 2)}
    orders = {n: tuple(o for _, o in frames[n].sel) for n in range(lo, hi + 1)}
    actions = {v: {} for v in VAR_INDICES}
    for n in range(lo, hi + 1):
        frame, nxt = frames[n], frames[n + 1]
        reps = _representatives(frame, field)
        for v in VAR_INDICES:
            mat = lmat_zero(len(nxt.sel), len(frame.sel), field)
            for j, rep in enumerate(reps):
                shifted = _shift_lf_vector(rep, frame.labels, nxt.labels, v, field)
                for i, val in enumerate(_coords_in_frame(nxt, shifted, field)):
                    mat[i][j] = val
            actions[v][n] = mat
    labels = {n: frames[n].labels for n in range(lo, hi + 1)}
    return DegreewiseModule(lo, hi, orders, actions, field, labels)


def _push_through_matrix(vec_lf, labels_src, f_matrix, labels_tgt, field):
    """Image of a monomial-coordinate vector under a module morphism.

    f_matrix maps the generators of the source presentation to vectors in
    the target's ambient free module.
    """
    idx = {lab: i for i, lab in enumerate(labels_tgt)}
    out = [lf_zero(field) for _ in labels_tgt]
    for j, coef in enumerate(vec_lf):
        if coef.is_zero:
            continue
        comp, mono = labels_src[j]
        for i in range(f_matrix.nrows):
            entry = f_matrix.rows[i][comp]
            if entry.is_zero:
                continue
            shifted = entry.term_mul(field(1), mono)
            for m, c in shifted.terms.items():
                key = (i, (0,) + m[1:])
                pos = idx.get(key)
                if pos is None:
                    raise AssertionError("image leaves the degree window")
                out[pos] = out[pos] + coef * LocalFrac(
                    UPoly([field(0)] * m[0] + [c], field)
                )
    return out


def presented_complex_degreewise(m1, f1, m0, f0, mm1, lo, hi):
    """Degreewise model of a complex of presented modules (mineure form)."""
    field = m0.field
    frames = {}
    terms = {}
    for key, mod in (("m1", m1), ("m0", m0), ("mm1", mm1)):
        frames[key] = {n: _piece_frame(mod, n) for n in range(lo, hi + 2)}
        orders = {n: tuple(o for _, o in frames[key][n].sel) for n in range(lo, hi + 1)}
        actions = {v: {} for v in VAR_INDICES}
        for n in range(lo, hi + 1):
            fr, nxt = frames[key][n], frames[key][n + 1]
            reps = _representatives(fr, field)
            for v in VAR_INDICES:
                mat = lmat_zero(len(nxt.sel), len(fr.sel), field)
                for j, rep in enumerate(reps):
                    shifted = _shift_lf_vector(rep, fr.labels, nxt.labels, v, field)
                    for i, val in enumerate(_coords_in_frame(nxt, shifted, field)):
                        mat[i][j] = val
                actions[v][n] = mat
        labels = {n: frames[key][n].labels for n in range(lo, hi + 1)}
        terms[key] = DegreewiseModule(lo, hi, orders, actions, field, labels)
    d1, d0 = {}, {}
    for n in range(lo, hi + 1):
        for dname, src_key, tgt_key, f in (
            ("d1", "m1", "m0", f1),
            ("d0", "m0", "mm1", f0),
        ):
            fr = frames[src_key][n]
            tgt_fr = frames[tgt_key][n]
            reps = _representatives(fr, field)
            mat = lmat_zero(len(tgt_fr.sel), len(fr.sel), field)
            for j, rep in enumerate(reps):
                img = _push_through_matrix(rep, fr.labels, f, tgt_fr.labels, field)
                for i, val in enumerate(_coords_in_frame(tgt_fr, img, field)):
                    mat[i][j] = val
            (d1 if dname == "d1" else d0)[n] = mat
    return DegreewiseComplex(
        terms["m1"], terms["m0"], terms["mm1"], d1, d0, field, check=False
    )


class DegreewiseRealizer:
    """Maps piece coordinates of a degreewise module back to ambient vectors
    of the presentation produced by presented_from_degreewise.

    `slots` lists, per generator in order, the (degree, piece slot) the
    generator was chosen at.
    """

    __slots__ = ("word_data", "gen_twists", "field", "slots")

    def __init__(self, word_data, gen_twists, field, slots=()):
        self.word_data = word_data
        self.gen_twists = gen_twists
        self.field = field
        self.slots = list(slots)

    def realize(self, n, coords):
        """A sparse {generator: Poly} vector evaluating to the given coords."""
        entries = self.word_data.get(n, [])
        if not entries:
            if all(c.is_zero for c in coords):
                return {}
            return None
        mat = [
            [entries[j][2][i] for j in range(len(entries))]
            for i in range(len(coords))
        ]
        x = lmat_solve(mat, list(coords), self.field)
        if x is None:
            return None
        return _word_kernel_to_column(
            [v for v in x], entries, len(self.gen_twists), self.field
        )


def presented_from_degreewise(dm, with_realizer=False):
    """A B-presentation whose pieces and actions match the degreewise data.

    Generators: in each degree, slots completing the fiber span of what
    the actions carry up from below (graded Nakayama).  Relations: all
    kernel vectors, degree by degree up to one past the window, of the
    evaluation map from monomial words in the generators to the piece;
    the result is then minimalized.
    """
    field = dm.field
    gens = []         # (degree, word basis built later)
    gen_twists = []
    words = {}        # degree -> list of (gen index, monomial, coords)
    rel_cols = []     # sparse {gen index: Poly}
    rel_twists = []

    for n in range(dm.lo, dm.hi + 2):
        dim_n = dm.dim(n)
        carried = []
        seen = {}
        for v in VAR_INDICES:
            act = dm.action(v, n - 1)
            for gi, mono, coords in words.get(n - 1, []):
                bumped = tuple(
                    e + (1 if k == v else 0) for k, e in enumerate(mono)
                )
                if (gi, bumped) in seen:
                    continue
                img = [
                    sum(
                        (act[i][j] * coords[j] for j in range(len(coords))),
                        lf_zero(field),
                    )
                    for i in range(dim_n)
                ]
                seen[(gi, bumped)] = True
                carried.append((gi, bumped, img))
        if dim_n:
            span = [[_lf_at_zero(c, field) for c in img] for _, _, img in carried]
            for slot in range(dim_n):
                cand = [field(1) if i == slot else field(0) for i in range(dim_n)]
                if not _in_scalar_span(span, cand, field):
                    gi = len(gens)
                    gens.append((n, slot))
                    gen_twists.append(n)
                    coords = [
                        LocalFrac.const(1 if i == slot else 0, field)
                        for i in range(dim_n)
                    ]
                    carried.append((gi, (0, 0, 0, 0, 0), coords))
                    span.append(cand)
        words[n] = carried
        if not carried:
            continue
        ncols = len(carried)
        mat = [
            [carried[j][2][i] for j in range(ncols)] for i in range(dim_n)
        ]
        lattice_cols = []
        for i, o in enumerate(dm.piece_orders(n)):
            if o is not None:
                col = [lf_zero(field)] * dim_n
                col[i] = LocalFrac(UPoly.a_power(o, field))
                lattice_cols.append(col)
        full = [
            mat[i] + [col[i] for col in lattice_cols] for i in range(dim_n)
        ]
        kern = lmat_kernel_basis(full, field, ncols=ncols + len(lattice_cols))
        for kv in kern:
            col = _word_kernel_to_column(kv[:ncols], carried, len(gens), field)
            if col:
                rel_cols.append((n, col))
                rel_twists.append(n)

    from .gradedmatrix import GradedMatrix, PresentedModule
    from .groebner import syzygies
    from .minimalize import minimalize

    cols = [col for _, col in rel_cols]
    pres = GradedMatrix.from_columns(gen_twists, cols, rel_twists, field)
    if pres.ncols:
        # prune redundant relation columns (unit generator pivots cannot
        # occur: the generators were chosen fiber-independent)
        (pres, _) = minimalize([pres, syzygies(pres)], active=[0, 1])
        if len(pres.tgt_twists) != len(gen_twists):
            raise AssertionError("generator choice was not minimal")
    module = PresentedModule(pres)
    if with_realizer:
        return module, DegreewiseRealizer(words, gen_twists, field, gens)
    return module


def _lf_at_zero(e, field):
    if e.is_zero:
        return field(0)
    return e.num.at_zero() / e.den.at_zero()


def _in_scalar_span(rows, cand, field):
    if not rows:
        return not any(cand)
    work = [list(r) for r in rows] + [list(cand)]
    return scalar_rank(work, field) == scalar_rank([list(r) for r in rows], field)


def _word_kernel_to_column(coeffs, carried, ngens, field):
    """Convert a kernel vector over words into a column over the generators."""
    u = UPoly.const(1, field)
    for c in coeffs:
        if not c.is_zero and c.den.degree() > 0:
            u = upoly_lcm(u, c.den)
    lu = LocalFrac(u)
    out = {}
    for c, (gi, mono, _) in zip(coeffs, carried):
        v = c * lu
        if v.is_zero:
            continue
        coef_poly = Poly.from_upoly(v.num, field)
        term = coef_poly.term_mul(field(1), mono)
        out[gi] = out.get(gi, Poly.zero(field)) + term
    return {gi: p for gi, p in out.items() if p}
