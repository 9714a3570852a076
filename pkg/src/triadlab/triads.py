"""Triads over the DVR: validation, invariants, pseudo-isomorphisms.

A triad is a three-term complex whose kernel is finitely generated and
whose heart and cokernel are finite over A.  The majeure form has free
terms (a Complex3); the mineure form has terms finite over A, held here
as presented modules with morphism matrices, plus a degreewise view.
"""

from .chiffres import chiffres_format
from .complexes import Complex3, heart, homology
from .degreewise import (
    DegreewiseComplex,
    dual_degreewise_complex,
    dual_truncated,
    lmat_cokernel_invariants,
    lmat_kernel_basis,
    lmat_mul,
    lmat_sub,
    lmat_is_zero_mod,
    lmat_zero,
    presented_complex_degreewise,
    presented_from_degreewise,
    truncate_complex3,
)
from .errors import (
    FinitenessError,
    NotAComplexError,
    NotAMorphismError,
    ShapeError,
)
from .gradedmatrix import GradedMatrix, PresentedModule
from .groebner import lift_through, normal_form, span_gb, syzygies
from .minimalize import minimalize
from .pieces import (
    degree_piece,
    is_finite_over_A,
    submodule_from_vectors,
    torsion_saturation,
)
from .resolutions import free_resolution, kernel_presentation


class Triad:
    """Majeure triad: a Complex3 certified to have the finiteness properties."""

    def __init__(self, complex3, provenance="", bound=20):
        self.complex = complex3
        self.provenance = provenance
        self.bound = bound
        self._heart = None
        self._coker = None
        self._kernel = None
        self._heart_report = None
        self._coker_report = None

    @property
    def field(self):
        return self.complex.field

    @property
    def is_majeure(self):
        return True

    def terms(self):
        return self.complex.terms()

    def heart(self):
        if self._heart is None:
            self._heart = heart(self.complex)
        return self._heart

    def cokernel(self):
        if self._coker is None:
            self._coker = homology(self.complex, -1)
        return self._coker

    def kernel(self):
        """(generators into L_1, relations) of N = h_1, minimal."""
        if self._kernel is None:
            self._kernel = kernel_presentation(self.complex.d1)
        return self._kernel

    def kernel_chiffres(self):
        return self.kernel()[0].source()

    def heart_finiteness(self):
        if self._heart_report is None:
            self._heart_report = is_finite_over_A(self.heart().module, self.bound)
        return self._heart_report

    def coker_finiteness(self):
        if self._coker_report is None:
            self._coker_report = is_finite_over_A(self.cokernel(), self.bound)
        return self._coker_report

    def support_window(self):
        """[lo, hi] containing the supports of the heart and the cokernel."""
        lows, highs = [], []
        for mod, rep in (
            (self.heart().module, self.heart_finiteness()),
            (self.cokernel(), self.coker_finiteness()),
        ):
            if mod.gen_twists:
                lows.append(min(mod.gen_twists))
            if rep.top_degree is not None:
                highs.append(rep.top_degree)
        lo = min(lows) if lows else 0
        hi = max(highs) if highs else lo - 1
        return lo, max(hi, lo - 1)

    def twisted(self, h):
        return Triad(self.complex.twisted(h), self.provenance, self.bound)

    def __repr__(self):
        a, b, c = self.terms()
        return f"Triad[{chiffres_format(a)} -> {chiffres_format(b)} -> {chiffres_format(c)}]"


class MinorTriad:
    """Mineure triad: presented terms with morphisms, or degreewise data."""

    def __init__(self, presented=None, degreewise=None, provenance="", bound=20):
        if presented is None and degreewise is None:
            raise ShapeError("a mineure triad needs presented or degreewise data")
        self._presented = presented  # (m1, f1, m0, f0, mm1)
        self._degreewise = degreewise
        self.provenance = provenance
        self.bound = bound

    @property
    def is_majeure(self):
        return False

    @property
    def field(self):
        if self._presented is not None:
            return self._presented[2].field
        return self._degreewise.field

    def window(self):
        if self._degreewise is not None:
            return self._degreewise.lo, self._degreewise.hi
        m1, _, m0, _, mm1 = self._presented
        lows, highs = [], []
        for term in (m1, m0, mm1):
            rep = is_finite_over_A(term, self.bound)
            if not rep.is_finite:
                raise FinitenessError("mineure term is not finite over A")
            if term.gen_twists:
                lows.append(min(term.gen_twists))
            if rep.top_degree is not None:
                highs.append(rep.top_degree)
        lo = min(lows) if lows else 0
        hi = max(highs) if highs else lo
        return lo, max(hi, lo)

    def degreewise(self):
        if self._degreewise is None:
            lo, hi = self.window()
            m1, f1, m0, f0, mm1 = self._presented
            self._degreewise = presented_complex_degreewise(m1, f1, m0, f0, mm1, lo, hi)
        return self._degreewise

    def presented(self):
        """(m1, f1, m0, f0, mm1); derived from degreewise data if needed."""
        if self._presented is None:
            dc = self._degreewise
            m1, r1 = presented_from_degreewise(dc.m1, with_realizer=True)
            m0, r0 = presented_from_degreewise(dc.m0, with_realizer=True)
            mm1, rm1 = presented_from_degreewise(dc.mm1, with_realizer=True)
            f1 = _realized_morphism(r1, m1, dc.m1, dc.diff1, r0, m0, self.field)
            f0 = _realized_morphism(r0, m0, dc.m0, dc.diff0, rm1, mm1, self.field)
            self._presented = (m1, f1, m0, f0, mm1)
        return self._presented

    def __repr__(self):
        lo, hi = self.window()
        return f"MinorTriad[window {lo}..{hi}]"


def _realized_morphism(src_realizer, src_mod, src_dw, diff, tgt_realizer, tgt_mod, field):
    """Morphism matrix on generators, from per-degree differential data."""
    cols = []
    twists = list(src_mod.gen_twists)
    for (n, slot) in src_realizer.slots:
        coords = [_one_if(field, i == slot) for i in range(src_dw.dim(n))]
        mat = diff(n)
        img = [_sum_entries(mat, i, coords, field) for i in range(len(mat))]
        vec = tgt_realizer.realize(n, img)
        if vec is None:
            raise ShapeError("differential image not realizable")
        cols.append(vec)
    return GradedMatrix.from_columns(tgt_mod.gen_twists, cols, twists, field)


def _one_if(field, flag):
    from .unipoly import LocalFrac

    return LocalFrac.const(1 if flag else 0, field)


def _sum_entries(mat, i, coords, field):
    from .unipoly import LocalFrac

    acc = LocalFrac.const(0, field)
    for j, c in enumerate(coords):
        if not c.is_zero and not mat[i][j].is_zero:
            acc = acc + mat[i][j] * c
    return acc


def triad_validate(obj, bound=20, provenance=""):
    """Certify the triad axioms; raise a diagnostic error otherwise.

    Accepts a Complex3 (majeure candidate), a DegreewiseComplex, or a
    5-tuple (m1, f1, m0, f0, mm1) of presented terms and morphisms.
    """
    if isinstance(obj, Complex3):
        if not obj.d0.mul(obj.d1).is_zero():
            raise NotAComplexError("d0 . d1 != 0")
        t = Triad(obj, provenance, bound)
        rep = t.heart_finiteness()
        if rep.verdict == "NOT_FINITE":
            raise FinitenessError("HEART_NOT_FINITE")
        rep = t.coker_finiteness()
        if rep.verdict == "NOT_FINITE":
            raise FinitenessError("COKERNEL_NOT_FINITE")
        return t
    if isinstance(obj, DegreewiseComplex):
        for term in (obj.m1, obj.m0, obj.mm1):
            if not term.is_free_pieced():
                raise FinitenessError("mineure term has non-flat pieces")
            if not term.check_commuting():
                raise NotAComplexError("actions do not commute")
        if not obj.is_complex():
            raise NotAComplexError("d0 . d1 != 0")
        if not obj.check_differentials_commute():
            raise NotAComplexError("differentials do not commute with actions")
        return MinorTriad(degreewise=obj, provenance=provenance, bound=bound)
    if isinstance(obj, tuple) and len(obj) == 5:
        m1, f1, m0, f0, mm1 = obj
        _check_morphism_presented(m1, f1, m0)
        _check_morphism_presented(m0, f0, mm1)
        for j in range(f1.ncols):
            img = f0.apply(f1.column(j))
            if not mm1.element_is_zero(img):
                raise NotAComplexError("d0 . d1 != 0")
        t = MinorTriad(presented=obj, provenance=provenance, bound=bound)
        t.window()  # certifies term finiteness
        dc = t.degreewise()
        for term in (dc.m1, dc.m0, dc.mm1):
            if not term.is_free_pieced():
                raise FinitenessError("mineure term has non-flat pieces")
        return t
    raise ShapeError("unrecognized triad data")


def _check_morphism_presented(src, f, tgt):
    if tuple(f.src_twists) != tuple(src.gen_twists) or tuple(f.tgt_twists) != tuple(
        tgt.gen_twists
    ):
        raise ShapeError("morphism matrix does not match the presentations")
    for j in range(src.presentation.ncols):
        img = f.apply(src.presentation.column(j))
        if not tgt.element_is_zero(img):
            raise NotAMorphismError("matrix does not send relations to relations")


# ----------------------------------------------------------------- reports

class FiberValue:
    """Hilbert data of a fiber of the associated functor."""

    __slots__ = ("hilbert", "module")

    def __init__(self, hilbert, module=None):
        self.hilbert = {n: d for n, d in hilbert.items() if d}
        self.module = module

    def __eq__(self, other):
        return isinstance(other, FiberValue) and self.hilbert == other.hilbert

    def __repr__(self):
        if not self.hilbert:
            return "0"
        return ", ".join(f"{n}:{d}" for n, d in sorted(self.hilbert.items()))


class TriadReport:
    __slots__ = (
        "terms",
        "kernel_chiffres",
        "heart_hilbert",
        "coker_hilbert",
        "modular",
        "representable",
        "exact",
        "elementary",
        "c1",
        "fiber_special",
        "fiber_generic",
    )

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))

    def flags(self):
        out = []
        if self.modular:
            out.append("modular")
        if self.representable:
            out.append("representable")
        if self.exact:
            out.append("exact")
        if self.elementary:
            out.append("elementary")
        return out


def triad_c1_terms(terms):
    l1, l0, lm1 = terms
    return l1.c1 - l0.c1 + lm1.c1


def triad_invariants(t):
    """Invariants and classification flags of a validated triad."""
    if t.is_majeure:
        return _invariants_majeure(t)
    return _invariants_mineure(t)


def _hilbert_of_module(mod, bound):
    rep = is_finite_over_A(mod, bound)
    if not rep.is_finite:
        raise FinitenessError("module is not finite over A")
    if rep.top_degree is None:
        return {}
    lo = min(mod.gen_twists) if mod.gen_twists else 0
    out = {}
    for n in range(lo, rep.top_degree + 1):
        inv = degree_piece(mod, n)
        if not inv.is_zero:
            out[n] = inv
    return out


def _invariants_majeure(t):
    h = t.heart().module
    c = t.cokernel()
    heart_hilbert = _hilbert_of_module(h, t.bound)
    coker_hilbert = _hilbert_of_module(c, t.bound)
    modular = all(inv.is_free for inv in coker_hilbert.values())
    elementary = all(inv.rank == 0 for inv in coker_hilbert.values())
    e_mod = PresentedModule(t.complex.d1)
    representable = torsion_saturation(e_mod).is_zero
    return TriadReport(
        terms=t.terms(),
        kernel_chiffres=t.kernel_chiffres(),
        heart_hilbert=heart_hilbert,
        coker_hilbert=coker_hilbert,
        modular=modular,
        representable=representable,
        exact=modular and representable,
        elementary=elementary,
        c1=triad_c1_terms(t.terms()),
        fiber_special=fiber_functor(t, "special"),
        fiber_generic=fiber_functor(t, "generic"),
    )


def _invariants_mineure(t):
    dc = t.degreewise()
    heart_hilbert, coker_hilbert = {}, {}
    modular = representable = elementary = True
    for n in range(dc.lo, dc.hi + 1):
        hinv = dc.heart_invariants(n)
        cinv = dc.cokernel_invariants_at(n)
        einv = dc.coker_d1_invariants_at(n)
        if not hinv.is_zero:
            heart_hilbert[n] = hinv
        if not cinv.is_zero:
            coker_hilbert[n] = cinv
        if not cinv.is_free:
            modular = False
        if cinv.rank:
            elementary = False
        if not einv.is_free:
            representable = False
    kernel_chiffres = None
    terms = None
    if t._presented is not None:
        m1, f1, m0, f0, mm1 = t._presented
        kern_gens, _ = _kernel_of_morphism(m1, f1, m0)
        kernel_chiffres = kern_gens.source()
        terms = (m1.generators(), m0.generators(), mm1.generators())
    return TriadReport(
        terms=terms,
        kernel_chiffres=kernel_chiffres,
        heart_hilbert=heart_hilbert,
        coker_hilbert=coker_hilbert,
        modular=modular,
        representable=representable,
        exact=modular and representable,
        elementary=elementary,
        c1=None,
        fiber_special=FiberValue(
            {n: dc.fiber_special_dim(n) for n in range(dc.lo, dc.hi + 1)}
        ),
        fiber_generic=FiberValue(
            {n: dc.fiber_generic_dim(n) for n in range(dc.lo, dc.hi + 1)}
        ),
    )


def _kernel_of_morphism(src, f, tgt):
    """Kernel of a morphism of presented modules, as a submodule of src."""
    combined = f.hstack(tgt.presentation)
    syz = syzygies(combined)
    k = f.ncols
    cols, degs = [], []
    for j in range(syz.ncols):
        col = syz.column(j)
        x = {c: p for c, p in col.items() if c < k and not p.is_zero}
        if x:
            cols.append(x)
            degs.append(syz.src_twists[j])
    gens = GradedMatrix.from_columns(src.gen_twists, cols, degs, src.field)
    sub = submodule_from_vectors(src, gens)
    return sub.gens, sub.module


def _presented_heart(m1, f1, m0, f0, mm1):
    """Heart of a presented mineure complex: ker(f0)/im(f1) in m0."""
    kgens, _ = _kernel_of_morphism(m0, f0, mm1)
    if kgens.ncols == 0:
        empty = GradedMatrix([], [], [], m0.field)
        return PresentedModule(empty), kgens
    combined = kgens.hstack(f1).hstack(m0.presentation)
    syz = syzygies(combined)
    k = kgens.ncols
    cols, degs = [], []
    for j in range(syz.ncols):
        col = syz.column(j)
        x = {c: p for c, p in col.items() if c < k and not p.is_zero}
        if x:
            cols.append(x)
            degs.append(syz.src_twists[j])
    rels = GradedMatrix.from_columns(kgens.src_twists, cols, degs, m0.field)
    kgens, rels = minimalize([kgens, rels], active=[1])
    return PresentedModule(rels), kgens


# ------------------------------------------------------------------ fibers

def fiber_functor(t, point):
    """Value of the associated functor at the special or generic point.

    special: a := 0 and h_0 over k[X,Y,Z,T]; generic: dimensions over
    k(a), read from the free ranks of the heart's pieces (localization is
    flat); base: the heart itself.
    """
    if point == "base":
        if t.is_majeure:
            return t.heart().module
        m1, f1, m0, f0, mm1 = t.presented()
        return _presented_heart(m1, f1, m0, f0, mm1)[0]
    if point not in ("special", "generic"):
        raise ValueError("point must be special, generic or base")
    if not t.is_majeure:
        dc = t.degreewise()
        if point == "special":
            return FiberValue(
                {n: dc.fiber_special_dim(n) for n in range(dc.lo, dc.hi + 1)}
            )
        return FiberValue(
            {n: dc.fiber_generic_dim(n) for n in range(dc.lo, dc.hi + 1)}
        )
    if point == "generic":
        hil = _hilbert_of_module(t.heart().module, t.bound)
        return FiberValue({n: inv.rank for n, inv in hil.items()})
    # special fiber: h0 of the complex at a = 0, then kill a
    cbar = t.complex.specialize_a()
    h0 = heart(cbar)
    mod = _with_a_killed(h0.module)
    hil = _hilbert_of_module(mod, t.bound)
    return FiberValue(
        {n: inv.dim_fiber() for n, inv in hil.items()}, module=h0.module
    )


def _with_a_killed(mod):
    from .pieces import a_power_matrix

    pres = mod.presentation
    akill = a_power_matrix(pres.tgt_twists, 1, mod.field)
    return PresentedModule(pres.hstack(akill))


def special_fiber_data(t):
    """The specialized heart with its generator vectors (for sub-quotients)."""
    cbar = t.complex.specialize_a()
    return heart(cbar)


# --------------------------------------------------------------------- psi

class TriadMorphism:
    """Explicit morphism of majeure triads: three matrices."""

    __slots__ = ("src", "tgt", "f1", "f0", "fm1")

    def __init__(self, src, tgt, f1, f0, fm1):
        self.src = src
        self.tgt = tgt
        self.f1 = f1
        self.f0 = f0
        self.fm1 = fm1

    def commutes(self):
        a = self.f0.mul(self.src.complex.d1)
        b = self.tgt.complex.d1.mul(self.f1)
        if a != b:
            return False
        a = self.fm1.mul(self.src.complex.d0)
        b = self.tgt.complex.d0.mul(self.f0)
        return a == b

    @classmethod
    def identity(cls, t):
        field = t.field
        return cls(
            t,
            t,
            GradedMatrix.identity(t.complex.l1_twists, field),
            GradedMatrix.identity(t.complex.l0_twists, field),
            GradedMatrix.identity(t.complex.lm1_twists, field),
        )


class PsiReport:
    __slots__ = (
        "is_morphism",
        "heart_injective",
        "heart_surjective",
        "coker_injective",
        "quotient_flat",
        "kernels_surjective",
    )

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k, False))

    @property
    def heart_iso(self):
        return self.heart_injective and self.heart_surjective

    @property
    def is_psi(self):
        return (
            self.is_morphism
            and self.heart_iso
            and self.coker_injective
            and self.quotient_flat
        )

    @property
    def is_strong_psi(self):
        return self.is_psi and self.kernels_surjective

    def __repr__(self):
        bits = []
        for k in self.__slots__:
            bits.append(f"{k}={getattr(self, k)}")
        return "PsiReport(" + ", ".join(bits) + ")"


def psi_check(morphism):
    """Verify the pseudo-isomorphism conditions for an explicit morphism.

    Heart isomorphism is certified at the module level (kernel and
    cokernel of the induced map vanish as presented modules); the induced
    map on cokernels must be injective with an a-torsion-free quotient.
    The kernel-surjectivity flag reports the strong condition.
    """
    if not morphism.commutes():
        raise NotAMorphismError("matrices do not commute with differentials")
    src, tgt = morphism.src, morphism.tgt
    report = PsiReport(is_morphism=True)

    hs, ht = src.heart(), tgt.heart()
    phi_cols, phi_degs = [], []
    ok = True
    for j in range(hs.gens.ncols):
        img = morphism.f0.apply(hs.gens.column(j))
        x = lift_through(ht.gens, img) if img else {}
        if x is None:
            ok = False
            break
        phi_cols.append(x or {})
        phi_degs.append(hs.gens.src_twists[j])
    if ok:
        phi = GradedMatrix.from_columns(
            ht.gens.src_twists, phi_cols, phi_degs, src.field
        )
        report.heart_surjective = _coker_is_zero(phi, ht.module)
        report.heart_injective = _induced_kernel_is_zero(phi, hs.module, ht.module)

    cs = src.cokernel()
    ct = tgt.cokernel()
    report.coker_injective = _induced_kernel_is_zero(morphism.fm1, cs, ct)
    quotient = PresentedModule(morphism.fm1.hstack(ct.presentation))
    report.quotient_flat = torsion_saturation(quotient).is_zero

    ks, _ = src.kernel()
    kt, _ = tgt.kernel()
    mapped_cols = []
    for j in range(ks.ncols):
        mapped_cols.append(morphism.f1.apply(ks.column(j)))
    mapped = GradedMatrix.from_columns(
        tgt.complex.l1_twists, mapped_cols, list(ks.src_twists), src.field
    )
    report.kernels_surjective = all(
        lift_through(mapped, kt.column(j)) is not None for j in range(kt.ncols)
    )
    return report


def _coker_is_zero(phi, tgt_module):
    combined = phi.hstack(tgt_module.presentation)
    gb = span_gb(combined)
    ambient = tgt_module.gen_twists
    field = phi.field
    from .poly import Poly

    for i in range(len(ambient)):
        if normal_form({i: Poly.const(1, field)}, gb):
            return False
    return True


def _induced_kernel_is_zero(phi, src_module, tgt_module):
    """Kernel of the induced map coker(src) -> coker(tgt) vanishes."""
    combined = phi.hstack(tgt_module.presentation)
    syz = syzygies(combined)
    k = phi.ncols
    gb = src_module.relation_gb()
    for j in range(syz.ncols):
        col = syz.column(j)
        x = {c: p for c, p in col.items() if c < k and not p.is_zero}
        if x and normal_form(x, gb):
            return False
    return True


def psi_check_degreewise(src_dc, tgt_dc, comps):
    """Psi conditions for a degreewise morphism, degree by degree.

    comps maps a degree n to matrices (f1_n, f0_n, fm1_n); missing degrees
    mean zero maps.  Sound for data finite over A: the functor conditions
    split into the per-degree DVR conditions.
    """
    field = src_dc.field
    lo = min(src_dc.lo, tgt_dc.lo)
    hi = max(src_dc.hi, tgt_dc.hi)
    report = PsiReport(is_morphism=True)
    heart_inj = heart_surj = coker_inj = quot_flat = kern_surj = True

    def comp_at(n):
        f1, f0, fm1 = comps.get(n, (None, None, None))
        if f1 is None:
            f1 = lmat_zero(tgt_dc.m1.dim(n), src_dc.m1.dim(n), field)
        if f0 is None:
            f0 = lmat_zero(tgt_dc.m0.dim(n), src_dc.m0.dim(n), field)
        if fm1 is None:
            fm1 = lmat_zero(tgt_dc.mm1.dim(n), src_dc.mm1.dim(n), field)
        return f1, f0, fm1

    for n in range(lo, hi + 1):
        f1, f0, fm1 = comp_at(n)
        # commutation
        if not lmat_is_zero_mod(
            lmat_sub(
                lmat_mul(f0, src_dc.diff1(n), field),
                lmat_mul(tgt_dc.diff1(n), f1, field),
            ),
            tgt_dc.m0.piece_orders(n),
        ):
            raise NotAMorphismError("degreewise morphism does not commute")
        if not lmat_is_zero_mod(
            lmat_sub(
                lmat_mul(fm1, src_dc.diff0(n), field),
                lmat_mul(tgt_dc.diff0(n), f0, field),
            ),
            tgt_dc.mm1.piece_orders(n),
        ):
            raise NotAMorphismError("degreewise morphism does not commute")

        # identity components over equal differentials: nothing to check
        if (
            _lmat_is_identity(f1)
            and _lmat_is_identity(f0)
            and _lmat_is_identity(fm1)
            and _lmat_equal(src_dc.diff1(n), tgt_dc.diff1(n))
            and _lmat_equal(src_dc.diff0(n), tgt_dc.diff0(n))
        ):
            continue

        # target entirely zero at this degree: psi needs the source's heart
        # and cokernel to vanish there; kernels surject onto zero trivially
        if (
            tgt_dc.m1.dim(n) == 0
            and tgt_dc.m0.dim(n) == 0
            and tgt_dc.mm1.dim(n) == 0
        ):
            if not src_dc.heart_invariants(n).is_zero:
                heart_inj = heart_surj = False
            if not src_dc.cokernel_invariants_at(n).is_zero:
                coker_inj = False
            continue

        # induced map on hearts at degree n
        from .degreewise import LMatSolver

        ks = lmat_kernel_basis(src_dc.diff0(n), field, ncols=src_dc.m0.dim(n))
        kt = lmat_kernel_basis(tgt_dc.diff0(n), field, ncols=tgt_dc.m0.dim(n))
        Ks = _cols_to_matrix(ks, src_dc.m0.dim(n), field)
        Kt = _cols_to_matrix(kt, tgt_dc.m0.dim(n), field)
        kt_solver = LMatSolver(Kt, field, ncols=len(kt))
        phi_cols = []
        for col in ks:
            img = _mat_vec(f0, col, field)
            y = kt_solver.solve(img)
            if y is None:
                heart_inj = heart_surj = False
                break
            phi_cols.append(y)
        else:
            phi = _cols_to_matrix(phi_cols, len(kt), field)
            lift_s = _im_in_kernel_coords(src_dc, Ks, n, field)
            lift_t = _im_in_kernel_coords(tgt_dc, Kt, n, field)
            if not _quotient_map_iso(phi, lift_s, lift_t, len(ks), len(kt), field):
                ok_inj, ok_surj = _quotient_map_flags(
                    phi, lift_s, lift_t, len(ks), len(kt), field
                )
                heart_inj = heart_inj and ok_inj
                heart_surj = heart_surj and ok_surj

        # induced map on cokernels at degree n
        inj, flat = _coker_map_flags(
            fm1,
            src_dc.diff0(n),
            tgt_dc.diff0(n),
            src_dc.mm1.dim(n),
            tgt_dc.mm1.dim(n),
            field,
        )
        coker_inj = coker_inj and inj
        quot_flat = quot_flat and flat

        # kernel surjectivity at degree n
        k1s = lmat_kernel_basis(src_dc.diff1(n), field, ncols=src_dc.m1.dim(n))
        k1t = lmat_kernel_basis(tgt_dc.diff1(n), field, ncols=tgt_dc.m1.dim(n))
        mapped = [_mat_vec(f1, col, field) for col in k1s]
        M = _cols_to_matrix(mapped, tgt_dc.m1.dim(n), field)
        m_solver = LMatSolver(M, field, ncols=len(mapped))
        for col in k1t:
            if m_solver.solve(col) is None:
                kern_surj = False
                break

    report.heart_injective = heart_inj
    report.heart_surjective = heart_surj
    report.coker_injective = coker_inj
    report.quotient_flat = quot_flat
    report.kernels_surjective = kern_surj
    return report


def _cols_to_matrix(cols, nrows, field):
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]


def _lmat_is_identity(mat):
    n = len(mat)
    if any(len(row) != n for row in mat):
        return False
    field = None
    for i, row in enumerate(mat):
        for j, e in enumerate(row):
            if i == j:
                if e.is_zero or e.den.degree() > 0 or e.num.degree() != 0:
                    return False
                if e.num.at_zero() != e.num.field(1):
                    return False
            elif not e.is_zero:
                return False
    return True


def _lmat_equal(a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if not (x - y).is_zero:
                return False
    return True


def _mat_vec(mat, vec, field):
    from .unipoly import LocalFrac

    out = []
    for i in range(len(mat)):
        acc = LocalFrac.const(0, field)
        for j, v in enumerate(vec):
            if not v.is_zero and not mat[i][j].is_zero:
                acc = acc + mat[i][j] * v
        out.append(acc)
    return out


def _im_in_kernel_coords(dc, K, n, field):
    """Columns of d1_n in the coordinates of the kernel basis K of d0_n."""
    from .degreewise import LMatSolver

    d1 = dc.diff1(n)
    cols = []
    width = len(K[0]) if K else 0
    solver = LMatSolver(K, field, ncols=width)
    for j in range(dc.m1.dim(n)):
        rhs = [d1[i][j] for i in range(dc.m0.dim(n))]
        y = solver.solve(rhs)
        if y is None:
            raise NotAComplexError("im d1 does not lie in ker d0")
        cols.append(y)
    return _cols_to_matrix(cols, width, field)


def _quotient_map_iso(phi, lift_s, lift_t, dim_s, dim_t, field):
    inj, surj = _quotient_map_flags(phi, lift_s, lift_t, dim_s, dim_t, field)
    return inj and surj


def _quotient_map_flags(phi, lift_s, lift_t, dim_s, dim_t, field):
    """Injectivity and surjectivity of K_s/im_s -> K_t/im_t induced by phi."""
    from .degreewise import LMatSolver

    # surjective: [phi | lift_t] has zero cokernel
    combined = [
        (phi[i] if i < len(phi) else []) + (lift_t[i] if i < len(lift_t) else [])
        for i in range(dim_t)
    ]
    surj = lmat_cokernel_invariants(combined, dim_t, field).is_zero
    # injective: kernel vectors of [phi | -lift_t] have x-part inside im_s
    inj = True
    stacked = [
        (phi[i] if i < len(phi) else [])
        + [e * _minus_one(field) for e in (lift_t[i] if i < len(lift_t) else [])]
        for i in range(dim_t)
    ]
    ncols = (len(stacked[0]) if stacked and stacked[0] else 0) or (
        dim_s + (len(lift_t[0]) if lift_t and lift_t[0] else 0)
    )
    solver = LMatSolver(lift_s, field, ncols=len(lift_s[0]) if lift_s and lift_s[0] else 0)
    for kv in lmat_kernel_basis(stacked, field, ncols=ncols):
        x = kv[:dim_s]
        if all(c.is_zero for c in x):
            continue
        if solver.solve(x) is None:
            inj = False
            break
    return inj, surj


def _minus_one(field):
    from .unipoly import LocalFrac

    return LocalFrac.const(-1, field)


def _coker_map_flags(fm1, d0_s, d0_t, dim_s, dim_t, field):
    """Injectivity of coker(d0_s) -> coker(d0_t) and flatness of the quotient."""
    from .degreewise import LMatSolver

    width_t = len(d0_t[0]) if d0_t and d0_t[0] else 0
    stacked = [
        (fm1[i] if i < len(fm1) else []) + (d0_t[i] if i < len(d0_t) else [])
        for i in range(dim_t)
    ]
    inj = True
    solver = LMatSolver(d0_s, field, ncols=len(d0_s[0]) if d0_s and d0_s[0] else 0)
    for kv in lmat_kernel_basis(stacked, field, ncols=dim_s + width_t):
        x = kv[:dim_s]
        if all(c.is_zero for c in x):
            continue
        if solver.solve(x) is None:
            inj = False
            break
    flat = lmat_cokernel_invariants(stacked, dim_t, field).is_free
    return inj, flat


def truncation_morphism(t, r):
    """The projection of a majeure triad onto its degree-<= r truncation.

    Returns (src_model, tgt_model, comps) ready for psi_check_degreewise.
    The source window extends past the truncation to the top of the heart
    and cokernel supports, so the check sees every degree where the
    source's functors can fail to vanish.
    """
    lo = t.complex.min_twist()
    if lo is None:
        lo = r
    _, top = t.support_window()
    hi = max(r + 1, top)
    src = truncate_complex3(t.complex, lo, hi)
    tgt = truncate_complex3(t.complex, lo, r)
    comps = {}
    field = t.field
    from .unipoly import LocalFrac

    for n in range(lo, r + 1):
        def ident(dim):
            return [
                [LocalFrac.const(1 if i == j else 0, field) for j in range(dim)]
                for i in range(dim)
            ]

        comps[n] = (
            ident(src.m1.dim(n)),
            ident(src.m0.dim(n)),
            ident(src.mm1.dim(n)),
        )
    return src, tgt, comps


# -------------------------------------------------- elementary reduction

def elementary_reduction(t):
    """A triad with cokernel the torsion part of C, and the psi into t.

    L_{-1} is replaced by a free cover Q_0 of the preimage P of the
    torsion submodule; d_0 lifts to coordinates on the cover, and the
    composite with d_1 (a syzygy of the cover, not zero on the nose) is
    cancelled against the relation stage Q_1, enlarging the upper terms
    by the relation and second-syzygy stages of P.
    """
    if not t.is_majeure:
        raise ShapeError("elementary reduction expects a majeure triad")
    field = t.field
    c_mod = t.cokernel()
    tors = torsion_saturation(c_mod)
    preimage = tors.gens.hstack(t.complex.d0)
    if preimage.ncols:
        pruned, _ = minimalize([preimage, syzygies(preimage)], active=[1])
    else:
        pruned = preimage
    # P = preimage submodule of L_{-1}: generators G, relations = syzygies
    g_mat = pruned
    p_module = PresentedModule(syzygies(g_mat))
    res_p = free_resolution(p_module, length=2, keep_generators=True, partial=True)
    q1 = (
        res_p[0]
        if res_p
        else GradedMatrix(p_module.gen_twists, [], [[] for _ in p_module.gen_twists], field)
    )
    q2 = (
        res_p[1]
        if len(res_p) > 1
        else GradedMatrix(q1.src_twists, [], [[] for _ in q1.src_twists], field)
    )
    # coordinates of d0 on the cover
    coord_cols = []
    for j in range(t.complex.d0.ncols):
        col = t.complex.d0.column(j)
        x = lift_through(g_mat, col) if col else {}
        if x is None:
            raise ShapeError("d0 does not land in the torsion preimage")
        coord_cols.append(x or {})
    f00 = GradedMatrix.from_columns(
        list(g_mat.src_twists), coord_cols, list(t.complex.d0.src_twists), field
    )
    # null-homotopy: the composite f00 . d1 is a syzygy of G, hence lifts
    comp = f00.mul(t.complex.d1)
    s_cols = []
    for j in range(comp.ncols):
        col = comp.column(j)
        x = lift_through(q1, col) if col else {}
        if x is None:
            raise ShapeError("composite does not lift through the relation stage")
        s_cols.append(x or {})
    s0 = GradedMatrix.from_columns(
        list(q1.src_twists), s_cols, list(t.complex.d1.src_twists), field
    )
    from .gradedmatrix import block_matrix

    l1_blocks = [list(t.complex.l1_twists), list(q2.src_twists)]
    l0_blocks = [list(t.complex.l0_twists), list(q1.src_twists)]
    d1_new = block_matrix(
        [[t.complex.d1.neg(), None], [s0, q2]],
        l0_blocks,
        l1_blocks,
        field,
    )
    d0_new = block_matrix([[f00, q1]], [list(g_mat.src_twists)], l0_blocks, field)
    reduced = Triad(
        Complex3(d1_new, d0_new, check=True),
        provenance=f"elementary reduction of {t.provenance}".strip(),
        bound=t.bound,
    )
    u1 = block_matrix(
        [[GradedMatrix.identity(list(t.complex.l1_twists), field).neg(), None]],
        [list(t.complex.l1_twists)],
        l1_blocks,
        field,
    )
    u0 = block_matrix(
        [[GradedMatrix.identity(list(t.complex.l0_twists), field), None]],
        [list(t.complex.l0_twists)],
        l0_blocks,
        field,
    )
    morphism = TriadMorphism(reduced, t, u1, u0, g_mat)
    return reduced, morphism


# -------------------------------------------------- resolution majeure

class MajeureResolution:
    """Majeure triad over a mineure one, with the augmentation maps."""

    __slots__ = ("majeure", "minor", "u1", "u0", "um1")

    def __init__(self, majeure, minor, u1, u0, um1):
        self.majeure = majeure
        self.minor = minor
        self.u1 = u1
        self.u0 = u0
        self.um1 = um1


def resolution_majeure(t):
    """Free resolution of a mineure triad, truncated to three terms.

    The total complex of per-term free resolutions, glued by lifts of the
    differentials and a null-homotopy of their composite; the projection
    onto the mineure triad is a strong psi.
    """
    if t.is_majeure:
        return MajeureResolution(t, t, None, None, None)
    m1, f1, m0, f0, mm1 = t.presented()
    field = t.field
    res0 = free_resolution(m0, length=2, keep_generators=True, partial=True)
    resm = free_resolution(mm1, length=3, keep_generators=True, partial=True)
    p0_1 = res0[0] if res0 else GradedMatrix(m0.gen_twists, [], [[] for _ in m0.gen_twists], field)
    dm_1 = resm[0] if resm else GradedMatrix(mm1.gen_twists, [], [[] for _ in mm1.gen_twists], field)
    dm_2 = (
        resm[1]
        if len(resm) > 1
        else GradedMatrix(dm_1.src_twists, [], [[] for _ in dm_1.src_twists], field)
    )
    # lift f0 through the resolution of mm1: F01 on relations of m0
    f01_cols = []
    comp = f0.mul(p0_1)
    for j in range(comp.ncols):
        col = comp.column(j)
        x = lift_through(dm_1, col) if col else {}
        if x is None:
            raise ShapeError("f0 lift failed")
        f01_cols.append(x or {})
    f01 = GradedMatrix.from_columns(
        dm_1.src_twists, f01_cols, list(p0_1.src_twists), field
    )
    # null-homotopy of f0 . f1
    g0 = f0.mul(f1)
    s0_cols = []
    for j in range(g0.ncols):
        col = g0.column(j)
        x = lift_through(dm_1, col) if col else {}
        if x is None:
            raise ShapeError("null-homotopy lift failed")
        s0_cols.append(x or {})
    s0 = GradedMatrix.from_columns(
        dm_1.src_twists, s0_cols, list(f1.src_twists), field
    )

    from .gradedmatrix import block_matrix

    l1_blocks = [list(f1.src_twists), list(p0_1.src_twists), list(dm_2.src_twists)]
    l0_blocks = [list(m0.gen_twists), list(dm_1.src_twists)]
    lm1_blocks = [list(mm1.gen_twists)]
    d1 = block_matrix(
        [
            [f1.neg(), p0_1.neg(), None],
            [s0, f01, dm_2],
        ],
        l0_blocks,
        l1_blocks,
        field,
    )
    d0 = block_matrix([[f0, dm_1]], lm1_blocks, l0_blocks, field)
    complex3 = Complex3(d1, d0, check=True)
    maps = minimalize([d0, d1], active=[0, 1])
    reduced = Complex3(maps[1], maps[0], check=False)
    majeure = Triad(reduced, provenance="majeure resolution", bound=t.bound)
    if (maps[0], maps[1]) != (d0, d1):
        return MajeureResolution(majeure, t, None, None, None)
    u1 = block_matrix(
        [[GradedMatrix.identity(list(f1.src_twists), field).neg(), None, None]],
        [list(f1.src_twists)],
        l1_blocks,
        field,
    )
    u0 = block_matrix(
        [[GradedMatrix.identity(list(m0.gen_twists), field), None]],
        [list(m0.gen_twists)],
        l0_blocks,
        field,
    )
    um1 = GradedMatrix.identity(list(mm1.gen_twists), field)
    return MajeureResolution(majeure, t, u1, u0, um1)


# -------------------------------------------------------------- dual triad

def dual_triad(t):
    """A dual triad, in mineure (degreewise) form.

    For a mineure triad the full degreewise dual; for a majeure one the
    truncated dual (L.*)_{>r} with r one below minus the top degree of the
    heart and cokernel supports, verified degreewise.
    """
    if not t.is_majeure:
        return MinorTriad(
            degreewise=dual_degreewise_complex(t.degreewise()),
            provenance=f"dual of {t.provenance}".strip(),
            bound=t.bound,
        )
    lo, hi = t.support_window()
    r = -hi - 1
    while True:
        dc = dual_truncated(t.complex, r - 2)
        if all(_dual_functors_vanish(dc, n) for n in (r - 1, r)):
            break
        r -= 1
    dual_dc = dual_truncated(t.complex, r)
    return MinorTriad(
        degreewise=dual_dc,
        provenance=f"dual of {t.provenance}".strip(),
        bound=t.bound,
    )


def _dual_functors_vanish(dc, n):
    """h_1 and h_0 of the dual vanish as functors at degree n.

    Over the DVR: h_0 vanishes iff the heart piece is zero and the
    cokernel piece is torsion-free; h_1 vanishes iff d_1 is injective
    with torsion-free cokernel at that degree.
    """
    if not dc.heart_invariants(n).is_zero:
        return False
    if not dc.cokernel_invariants_at(n).is_free:
        return False
    kern = lmat_kernel_basis(dc.diff1(n), dc.field, ncols=dc.m1.dim(n))
    if kern:
        return False
    return dc.coker_d1_invariants_at(n).is_free
