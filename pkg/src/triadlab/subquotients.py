"""Building triads from sub-quotient data and length-2 extension cocycles.

A sub-quotient datum is a flag M_1 ⊆ J ⊆ M_0 of graded modules over the
residue field; the trivial triad joins M_0 to M = J/M_1 over the DVR.
Cone constructions glue a free resolution of the cokernel C to one of the
heart H along a degree-0 cocycle P_2 -> H, giving the triads with those
invariants; the compact variant uses a surjective cocycle to shrink the
middle term.
"""

from .complexes import Complex3
from .errors import ShapeError, TriadlabError
from .gradedmatrix import GradedMatrix, PresentedModule, block_matrix
from .groebner import lift_through, normal_form, span_gb, syzygies
from .minimalize import minimalize
from .pieces import degree_piece, submodule_from_vectors, torsion_saturation
from .poly import Poly
from .resolutions import free_resolution
from .triads import (
    FiberValue,
    MinorTriad,
    Triad,
    fiber_functor,
    special_fiber_data,
    triad_validate,
)


class SubquotientDatum:
    """Flag M_1 ⊆ J ⊆ M_0 over the residue field (a-free presentations)."""

    __slots__ = ("m0", "j_gens", "m1_gens")

    def __init__(self, m0, j_gens, m1_gens, check=True):
        self.m0 = m0
        self.j_gens = j_gens
        self.m1_gens = m1_gens
        if check:
            self.validate()

    def validate(self):
        for mat in (self.m0.presentation, self.j_gens, self.m1_gens):
            for row in mat.rows:
                for e in row:
                    for mono in e.terms:
                        if mono[0]:
                            raise ShapeError("sub-quotient data must not involve a")
        j_span = self.j_gens.hstack(self.m0.presentation)
        gb = span_gb(j_span)
        for j in range(self.m1_gens.ncols):
            if normal_form(self.m1_gens.column(j), gb):
                raise ShapeError("M_1 is not contained in J")

    def quotient_m(self):
        """M = J/M_1 presented on the J generators."""
        combined = self.j_gens.hstack(self.m1_gens).hstack(self.m0.presentation)
        syz = syzygies(combined)
        k = self.j_gens.ncols
        cols, degs = [], []
        for j in range(syz.ncols):
            col = syz.column(j)
            x = {c: p for c, p in col.items() if c < k and not p.is_zero}
            if x:
                cols.append(x)
                degs.append(syz.src_twists[j])
        rels = GradedMatrix.from_columns(
            self.j_gens.src_twists, cols, degs, self.m0.field
        )
        if rels.ncols:
            gens, rels = minimalize([self.j_gens, rels], active=[1])
        return PresentedModule(rels)

    def co_quotient(self):
        """M_{-1} = M_0 / J."""
        return PresentedModule(self.j_gens.hstack(self.m0.presentation))

    def m1_module(self):
        return submodule_from_vectors(self.m0, self.m1_gens)


def trivial_triad(datum, bound=20, verify=True):
    """The triad  M_1 ⊗ A --(j·a)--> M_0 ⊗ A --(p·a)--> M_{-1} ⊗ A.

    Both maps carry the uniformizer; the special fiber of the associated
    functor is M_0 and the generic fiber is M = J/M_1 (asserted when
    verify is set).
    """
    field = datum.m0.field
    m1_sub = datum.m1_module()
    t1 = m1_sub.module
    t0 = datum.m0
    tm1 = datum.co_quotient()
    a = Poly.var("a", field)
    f1_cols = []
    for j in range(m1_sub.gens.ncols):
        col = m1_sub.gens.column(j)
        f1_cols.append({i: a * p for i, p in col.items()})
    f1 = GradedMatrix.from_columns(
        t0.gen_twists, f1_cols, list(m1_sub.gens.src_twists), field
    )
    ident = GradedMatrix.identity(list(t0.gen_twists), field)
    f0_rows = [[a * e for e in row] for row in ident.rows]
    f0 = GradedMatrix(list(t0.gen_twists), list(t0.gen_twists), f0_rows, field)
    t = triad_validate((t1, f1, t0, f0, tm1), bound=bound, provenance="trivial triad")
    if verify:
        m = datum.quotient_m()
        want_special = _module_hilbert_fiber(t0)
        want_generic = _module_hilbert_fiber(m)
        got_special = fiber_functor(t, "special").hilbert
        got_generic = fiber_functor(t, "generic").hilbert
        if got_special != want_special or got_generic != want_generic:
            raise TriadlabError("trivial triad fibers do not match the flag")
    return t


def _module_hilbert_fiber(mod):
    """Hilbert function of an a-free presented module over the residue field."""
    out = {}
    if not mod.gen_twists:
        return out
    lo = min(mod.gen_twists)
    n = lo
    misses = 0
    while misses < 5:
        inv = degree_piece(mod, n)
        d = inv.dim_generic()
        if d:
            out[n] = d
            misses = 0
        else:
            misses += 1
        n += 1
    return out


# ------------------------------------------------------------- cocycles

class ExtCocycle:
    """A degree-0 map u: P_2 -> H over a free resolution P. of C."""

    __slots__ = ("c_module", "resolution", "target", "u_hat")

    def __init__(self, c_module, resolution, target, u_hat):
        self.c_module = c_module
        self.resolution = resolution  # [d1: P1->P0, d2: P2->P1, (d3: P3->P2)]
        self.target = target
        self.u_hat = u_hat  # GradedMatrix: F0(target) <- P2
        if len(resolution) < 2:
            raise ShapeError("cocycle needs a resolution through stage two")
        p2 = resolution[1].src_twists
        if tuple(u_hat.src_twists) != tuple(p2):
            raise ShapeError("cocycle source must be stage two of the resolution")
        if tuple(u_hat.tgt_twists) != tuple(target.gen_twists):
            raise ShapeError("cocycle target must be the heart's generators")
        bad = [v for v in u_hat.check()]
        if bad:
            raise ShapeError("cocycle map is not homogeneous of degree zero")

    @classmethod
    def from_module(cls, c_module, target, images, length=3):
        """Build over the minimal free resolution of C; images indexed by
        the stage-two basis."""
        res = free_resolution(c_module, length=length, keep_generators=True, partial=True)
        if len(res) < 2:
            raise ShapeError("cokernel resolution is too short for a cocycle")
        p2 = res[1].src_twists
        field = c_module.field
        cols = [images.get(j, {}) for j in range(len(p2))]
        u_hat = GradedMatrix.from_columns(
            list(target.gen_twists), cols, list(p2), field
        )
        return cls(c_module, res, target, u_hat)

    def delta2(self):
        if len(self.resolution) >= 3:
            return self.resolution[2]
        return syzygies(self.resolution[1])


def cocycle_check(cocycle):
    """True iff u . delta_2 vanishes in the heart."""
    comp = cocycle.u_hat.mul(cocycle.delta2())
    gb = cocycle.target.relation_gb()
    for j in range(comp.ncols):
        if normal_form(comp.column(j), gb):
            return False
    return True


def cone_triad(c_module, h_module, cocycle, bound=20, verify=True):
    """The majeure triad with cokernel C, heart H and extension class u.

    L_{-1} = P_0, L_0 = P_1 ⊕ Q_0, L_1 = P_2 ⊕ Q_1 with
    d_0 = (delta_0  0) and d_1 = [[delta_1, 0], [u_0, gamma]].
    """
    if not cocycle_check(cocycle):
        raise ShapeError("cocycle condition fails: u . delta_2 != 0")
    field = h_module.field
    res_c = cocycle.resolution
    delta0, delta1 = res_c[0], res_c[1]
    res_h = free_resolution(h_module, length=2, keep_generators=True, partial=True)
    gamma = (
        res_h[0]
        if res_h
        else GradedMatrix(h_module.gen_twists, [], [[] for _ in h_module.gen_twists], field)
    )
    p0 = list(delta0.tgt_twists)
    p1 = list(delta0.src_twists)
    p2 = list(delta1.src_twists)
    q0 = list(h_module.gen_twists)
    q1 = list(gamma.src_twists)
    d1 = block_matrix(
        [[delta1, None], [cocycle.u_hat, gamma]],
        [p1, q0],
        [p2, q1],
        field,
    )
    d0 = block_matrix([[delta0, None]], [p0], [p1, q0], field)
    t = triad_validate(Complex3(d1, d0), bound=bound, provenance="cone triad")
    if verify:
        _verify_cone_homology(t, c_module, h_module)
    return t


def _verify_cone_homology(t, c_module, h_module):
    from .triads import _hilbert_of_module

    got_c = _hilbert_of_module(t.cokernel(), t.bound)
    want_c = _hilbert_of_module(c_module, t.bound)
    if got_c != want_c:
        raise TriadlabError("cone cokernel does not match C")
    got_h = _hilbert_of_module(t.heart().module, t.bound)
    want_h = _hilbert_of_module(h_module, t.bound)
    if got_h != want_h:
        raise TriadlabError("cone heart does not match H")


def compact_cone_triad(c_module, h_module, cocycle, bound=20, verify=True):
    """The economical triad available when the cocycle is surjective.

    L_0 = P_1, L_{-1} = P_0, and L_1 a minimal cover of ker(u-bar) where
    u-bar : ker(delta_0) -> H is induced by u through delta_1.
    """
    if not cocycle_check(cocycle):
        raise ShapeError("cocycle condition fails: u . delta_2 != 0")
    field = h_module.field
    if not _u_hat_surjective(cocycle, h_module):
        raise ShapeError("cocycle is not surjective onto the heart")
    res_c = cocycle.resolution
    delta0, delta1 = res_c[0], res_c[1]
    # ker u-hat inside P_2
    combined = cocycle.u_hat.hstack(h_module.presentation)
    syz = syzygies(combined)
    k = cocycle.u_hat.ncols
    cols, degs = [], []
    for j in range(syz.ncols):
        col = syz.column(j)
        x = {c: p for c, p in col.items() if c < k and not p.is_zero}
        if x:
            cols.append(x)
            degs.append(syz.src_twists[j])
    ker_u = GradedMatrix.from_columns(
        list(delta1.src_twists), cols, degs, field
    )
    pushed = delta1.mul(ker_u)
    if pushed.ncols:
        pruned, _ = minimalize([pushed, syzygies(pushed)], active=[1])
    else:
        pruned = pushed
    t = triad_validate(
        Complex3(pruned, delta0), bound=bound, provenance="compact cone triad"
    )
    if verify:
        _verify_cone_homology(t, c_module, h_module)
    return t


def _u_hat_surjective(cocycle, h_module):
    combined = cocycle.u_hat.hstack(h_module.presentation)
    gb = span_gb(combined)
    field = h_module.field
    for i in range(len(h_module.gen_twists)):
        if normal_form({i: Poly.const(1, field)}, gb):
            return False
    return True


# --------------------------------------------------- sub-quotient extraction

class SubquotientExtraction:
    __slots__ = ("datum", "m_a", "m_module", "co_quotient_hilbert")

    def __init__(self, datum, m_a, m_module, co_quotient_hilbert):
        self.datum = datum
        self.m_a = m_a
        self.m_module = m_module
        self.co_quotient_hilbert = co_quotient_hilbert


def subquotient_of(t, verify=True):
    """The flag M_1 ⊆ J ⊆ M_0 = V(k) carried by a triad, plus M_A = H/H_t.

    J is the image of H ⊗ k in the special fiber, M_1 the image of the
    torsion part; the co-quotient M_0/J has the Hilbert function of
    Tor_1(C, k).
    """
    if not t.is_majeure:
        raise ShapeError("sub-quotient extraction expects a majeure triad")
    field = t.field
    h = t.heart()
    tors = torsion_saturation(h.module)
    m_a = PresentedModule(tors.gens.hstack(h.module.presentation))

    fiber = special_fiber_data(t)  # heart of the specialized complex
    m0 = _as_residue_module(fiber.module)

    # J: images of the heart generators in the special fiber
    j_cols, j_degs = [], []
    for j in range(h.gens.ncols):
        vec = {c: p.specialize_a() for c, p in h.gens.column(j).items()}
        vec = {c: p for c, p in vec.items() if p}
        x = lift_through(fiber.gens, vec) if vec else {}
        if x is None:
            raise ShapeError("heart does not land in the special fiber kernel")
        j_cols.append(x or {})
        j_degs.append(h.gens.src_twists[j])
    j_gens = GradedMatrix.from_columns(
        list(fiber.gens.src_twists), j_cols, j_degs, field
    )

    # M_1: images of the torsion generators (torsion gens are heart coords)
    m1_cols, m1_degs = [], []
    for j in range(tors.gens.ncols):
        coords = tors.gens.column(j)
        vec = {}
        for c, p in coords.items():
            jcol = j_cols[c] if c < len(j_cols) else {}
            pbar = p.specialize_a()
            if not pbar:
                continue
            for i, q in jcol.items():
                vec[i] = vec.get(i, Poly.zero(field)) + pbar * q
        vec = {i: p for i, p in vec.items() if p}
        if vec:
            m1_cols.append(vec)
            m1_degs.append(tors.gens.src_twists[j])
    m1_gens = GradedMatrix.from_columns(
        list(fiber.gens.src_twists), m1_cols, m1_degs, field
    )

    datum = SubquotientDatum(m0, j_gens, m1_gens, check=verify)
    m_module = datum.quotient_m()
    cq = datum.co_quotient()
    cq_hilbert = _module_hilbert_fiber(cq)
    if verify:
        _verify_subquotient(t, m_a, m_module, cq_hilbert)
    return SubquotientExtraction(datum, m_a, m_module, cq_hilbert)


def _as_residue_module(mod):
    """Strip the a-variable from an a-free presentation."""
    pres = mod.presentation
    for row in pres.rows:
        for e in row:
            for mono in e.terms:
                if mono[0]:
                    raise ShapeError("special fiber presentation involves a")
    return PresentedModule(pres)


def _verify_subquotient(t, m_a, m_module, cq_hilbert):
    from .triads import _hilbert_of_module

    # M_A ⊗ k must match M = J/M_1
    ma_hilbert = {
        n: inv.dim_fiber() for n, inv in _hilbert_of_module(m_a, t.bound).items()
    }
    m_hilbert = _module_hilbert_fiber(m_module)
    if ma_hilbert != m_hilbert:
        raise TriadlabError("M_A ⊗ k does not match J/M_1")
    # M_0/J must have the Hilbert function of Tor_1(C, k): the torsion
    # factor counts of the cokernel, degree by degree
    c_hilbert = _hilbert_of_module(t.cokernel(), t.bound)
    tor_counts = {n: len(inv.torsion) for n, inv in c_hilbert.items() if inv.torsion}
    if tor_counts != cq_hilbert:
        raise TriadlabError("M_0/J does not match Tor_1(C, k)")
