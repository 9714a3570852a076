"""Degree-wise structure of presented modules over the DVR.

A graded piece of a finitely presented B-module is a finitely generated
k[a]-module: build the relation matrix on the monomial basis in X,Y,Z,T
and read its invariant factors over the localization.
"""

from .errors import InconclusiveError
from .gradedmatrix import GradedMatrix, PresentedModule
from .groebner import groebner_basis, syzygies, vec_lead
from .minimalize import minimalize
from .pid import InvariantFactors, cokernel_invariants
from .poly import Poly, mono_key, mono_wdeg
from .unipoly import UPoly

_MONOS_CACHE = {}


def monomials_of_degree(d):
    """Monomials of weighted degree d in X,Y,Z,T, largest first."""
    if d < 0:
        return ()
    hit = _MONOS_CACHE.get(d)
    if hit is not None:
        return hit
    out = []
    for ex in range(d + 1):
        for ey in range(d - ex + 1):
            for ez in range(d - ex - ey + 1):
                et = d - ex - ey - ez
                out.append((0, ex, ey, ez, et))
    out.sort(key=mono_key, reverse=True)
    out = tuple(out)
    _MONOS_CACHE[d] = out
    return out


def piece_basis(twists, n):
    """Row labels of the degree-n piece of a twisted free module."""
    out = []
    for i, t in enumerate(twists):
        for m in monomials_of_degree(n - t):
            out.append((i, m))
    return out


def _poly_rows(p):
    """Split a polynomial into {X..T-monomial: UPoly in a}."""
    groups = {}
    for m, c in p.terms.items():
        key = (0,) + m[1:]
        groups.setdefault(key, {})[m[0]] = c
    out = {}
    for key, vals in groups.items():
        top = max(vals)
        out[key] = UPoly(
            [vals.get(i, p.field(0)) for i in range(top + 1)], p.field
        )
    return out


def piece_matrix(matrix, n):
    """The degree-n slice of a graded matrix as a k[a]-matrix.

    Rows follow piece_basis(target, n); columns are (source column j,
    monomial of degree n - src_twist_j).
    """
    field = matrix.field
    rows_idx = {lab: i for i, lab in enumerate(piece_basis(matrix.tgt_twists, n))}
    cols = []
    for j, tj in enumerate(matrix.src_twists):
        for mu in monomials_of_degree(n - tj):
            col = [UPoly((), field) for _ in rows_idx]
            for i in range(matrix.nrows):
                e = matrix.rows[i][j]
                if e.is_zero:
                    continue
                prod = e.term_mul(field(1), mu)
                for key, up in _poly_rows(prod).items():
                    col[rows_idx[(i, key)]] = up
            cols.append(col)
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(len(rows_idx))]
    return mat, len(rows_idx)


def degree_piece(m, n):
    """InvariantFactors of the degree-n piece of a presented module."""
    mat, nrows = piece_matrix(m.presentation, n)
    return cokernel_invariants(mat, nrows, m.field)


def hilbert_data(m, lo, hi):
    """List of (n, InvariantFactors) over a degree window."""
    return [(n, degree_piece(m, n)) for n in range(lo, hi + 1)]


def element_piece_coords(vec, twists, n, field):
    """Coordinates of a homogeneous degree-n vector on the piece basis."""
    labels = piece_basis(twists, n)
    idx = {lab: i for i, lab in enumerate(labels)}
    out = [UPoly((), field) for _ in labels]
    for c, p in vec.items():
        for key, up in _poly_rows(p).items():
            out[idx[(c, key)]] = up
    return out


def a_power_matrix(twists, power, field):
    """a^power times the identity, as a graded matrix."""
    p = Poly.term(field(1), (power, 0, 0, 0, 0), field)
    z = Poly.zero(field)
    n = len(twists)
    rows = [[p if i == j else z for j in range(n)] for i in range(n)]
    return GradedMatrix(twists, twists, rows, field)


def colon_by_a_power(m, power):
    """Generators of (relations : a^power) inside the ambient free module."""
    pres = m.presentation
    combined = a_power_matrix(pres.tgt_twists, power, m.field).hstack(pres)
    syz = syzygies(combined)
    k = len(pres.tgt_twists)
    cols, degs = [], []
    for j in range(syz.ncols):
        col = syz.column(j)
        w = {c: p for c, p in col.items() if c < k and not p.is_zero}
        if w:
            cols.append(w)
            degs.append(syz.src_twists[j])
    return GradedMatrix.from_columns(pres.tgt_twists, cols, degs, m.field)


def _span_signature(matrix):
    """Canonical content of the reduced GB of the column span."""
    gb = groebner_basis(matrix.columns(), matrix.tgt_twists, matrix.field)
    sig = []
    for g in gb.elements:
        sig.append(tuple(sorted((c, frozenset(p.terms.items())) for c, p in g.items())))
    return frozenset(sig)


class SubmoduleInModule:
    """A submodule of a presented module: generator vectors plus its own presentation."""

    __slots__ = ("ambient", "gens", "module")

    def __init__(self, ambient, gens, module):
        self.ambient = ambient
        self.gens = gens
        self.module = module

    @property
    def is_zero(self):
        return self.gens.ncols == 0


def submodule_from_vectors(ambient, gens_matrix):
    """Submodule of coker(ambient.presentation) spanned by the given vectors.

    Generators that die in the quotient are dropped; the presentation is
    the syzygy module of [gens | relations] restricted to the gens block,
    minimalized without rebasing the surviving generators' meaning beyond
    unit reduction.
    """
    pres = ambient.presentation
    cols, degs = [], []
    for j in range(gens_matrix.ncols):
        v = ambient.reduce(gens_matrix.column(j))
        if v:
            cols.append(v)
            degs.append(gens_matrix.src_twists[j])
    gens = GradedMatrix.from_columns(pres.tgt_twists, cols, degs, ambient.field)
    if gens.ncols == 0:
        module = PresentedModule.free([], ambient.field)
        return SubmoduleInModule(ambient, gens, module)
    combined = gens.hstack(pres)
    syz = syzygies(combined)
    k = gens.ncols
    rel_cols, rel_degs = [], []
    for j in range(syz.ncols):
        col = syz.column(j)
        x = {c: p for c, p in col.items() if c < k and not p.is_zero}
        if x:
            rel_cols.append(x)
            rel_degs.append(syz.src_twists[j])
    rels = GradedMatrix.from_columns(gens.src_twists, rel_cols, rel_degs, ambient.field)
    gens, rels = minimalize([gens, rels], active=[1])
    module = PresentedModule(rels)
    return SubmoduleInModule(ambient, gens, module)


def torsion_saturation(m, max_steps=16):
    """The a-power-torsion submodule (0 :_m a^infinity).

    Iterates the colon chain (rel : a) <= (rel : a^2) <= ... until two
    consecutive steps agree; once (0:a^i) = (0:a^{i+1}) the chain is
    constant, so that step is the saturation.  Noetherianity guarantees
    termination; the bound is a safety valve.
    """
    prev_sig = None
    prev_colon = None
    for power in range(1, max_steps + 1):
        colon = colon_by_a_power(m, power)
        sig = _span_signature(colon.hstack(m.presentation))
        if sig == prev_sig:
            return submodule_from_vectors(m, prev_colon)
        prev_sig, prev_colon = sig, colon
    raise InconclusiveError("torsion chain did not stabilize within bound")


def is_a_torsion_free(m):
    return torsion_saturation(m).is_zero


class FinitenessReport:
    __slots__ = ("verdict", "top_degree", "nilpotency")

    def __init__(self, verdict, top_degree=None, nilpotency=None):
        self.verdict = verdict
        self.top_degree = top_degree
        self.nilpotency = nilpotency

    @property
    def is_finite(self):
        return self.verdict == "FINITE"

    def __repr__(self):
        if self.verdict == "FINITE":
            return f"FINITE(top degree {self.top_degree})"
        return self.verdict


def is_finite_over_A(m, bound=20):
    """Decide finiteness over the DVR; report the top nonzero degree.

    The module is finite over A iff its fiber at a = 0 is finite over k
    (graded Nakayama piece by piece), which the lead monomials of a basis
    of the specialized relations decide: each variable needs a pure power
    in every component.  The bound caps the accepted nilpotency exponents;
    exceeding it is INCONCLUSIVE, never a silent yes.
    """
    pres = m.presentation.specialize_a()
    ncomp = pres.nrows
    if ncomp == 0:
        return FinitenessReport("FINITE", top_degree=None, nilpotency={})
    gb = groebner_basis(pres.columns(), pres.tgt_twists, m.field)
    leads = {}
    for g in gb.elements:
        c, mono, _ = vec_lead(g)
        leads.setdefault(c, []).append(mono)
    nil = {}
    for comp in range(ncomp):
        monos = leads.get(comp, [])
        if any(m0 == (0, 0, 0, 0, 0) for m0 in monos):
            nil[comp] = {v: 0 for v in range(1, 5)}
            continue
        nil[comp] = {}
        for v in range(1, 5):
            exps = [
                m0[v]
                for m0 in monos
                if all(m0[i] == 0 for i in range(1, 5) if i != v) and m0[v] > 0
            ]
            if not exps:
                return FinitenessReport("NOT_FINITE")
            e = min(exps)
            if e > bound:
                raise InconclusiveError(
                    f"nilpotency exponent {e} exceeds bound {bound}"
                )
            nil[comp][v] = e
    # pieces vanish beyond twist + sum of (exponent - 1); scan for the top
    top_scan = max(
        t + sum(max(0, e - 1) for e in nil[i].values())
        for i, t in enumerate(m.presentation.tgt_twists)
    )
    lo = min(m.presentation.tgt_twists)
    top = None
    for n in range(lo, top_scan + 1):
        if not degree_piece(m, n).is_zero:
            top = n
    return FinitenessReport("FINITE", top_degree=top, nilpotency=nil)
