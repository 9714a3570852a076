"""Three-term complexes of free modules and their homology presentations."""

from .chiffres import Chiffres
from .errors import NotAComplexError, ShapeError
from .gradedmatrix import GradedMatrix, PresentedModule, block_matrix
from .groebner import lift_through
from .minimalize import minimalize
from .resolutions import kernel_presentation

class Complex3:
    """L_1 --d1--> L_0 --d0--> L_{-1} with dissocié (free) terms."""

    __slots__ = ("d1", "d0")

    def __init__(self, d1, d0, check=True):
        if d1.tgt_twists != d0.src_twists:
            raise ShapeError("middle terms of d1 and d0 differ")
        if check and not d0.mul(d1).is_zero():
            raise NotAComplexError("d0 . d1 != 0")
        self.d1 = d1
        self.d0 = d0

    @property
    def field(self):
        return self.d1.field

    @property
    def l1_twists(self):
        return self.d1.src_twists

    @property
    def l0_twists(self):
        return self.d1.tgt_twists

    @property
    def lm1_twists(self):
        return self.d0.tgt_twists

    def terms(self):
        return (
            Chiffres.from_twists(self.l1_twists),
            Chiffres.from_twists(self.l0_twists),
            Chiffres.from_twists(self.lm1_twists),
        )

    def twisted(self, h):
        return Complex3(self.d1.twisted(h), self.d0.twisted(h), check=False)

    def specialize_a(self, value=None):
        return Complex3(
            self.d1.specialize_a(value), self.d0.specialize_a(value), check=False
        )

    def min_twist(self):
        lows = [t for tw in (self.l1_twists, self.l0_twists, self.lm1_twists) for t in tw]
        return min(lows) if lows else None

    def __repr__(self):
        a, b, c = self.terms()
        return f"Complex3({a!r} -> {b!r} -> {c!r})"


class Homology0:
    """h_0 presentation together with representative vectors in L_0."""

    __slots__ = ("module", "gens")

    def __init__(self, module, gens):
        self.module = module
        self.gens = gens


def homology(c, i):
    """Kernel (i=1), heart (i=0) or cokernel (i=-1) of a Complex3.

    i=1 and i=-1 return a PresentedModule; i=0 returns Homology0 so the
    generators keep their meaning as vectors of L_0.
    """
    if i == 1:
        gens, rels = kernel_presentation(c.d1)
        return PresentedModule(rels)
    if i == -1:
        return PresentedModule(c.d0)
    if i != 0:
        raise ValueError("homological index must be 1, 0 or -1")
    return heart(c)


def heart(c):
    """h_0 = ker d0 / im d1 with tracked generator vectors."""
    k_gens, k_rels = kernel_presentation(c.d0)
    if k_gens.ncols == 0:
        empty = GradedMatrix([], [], [], c.field)
        return Homology0(PresentedModule(empty), k_gens)
    lift_cols = []
    for j in range(c.d1.ncols):
        col = c.d1.column(j)
        if not col:
            continue
        x = lift_through(k_gens, col)
        if x is None:
            raise NotAComplexError("image of d1 does not lie in ker d0")
        lift_cols.append((x, c.d1.src_twists[j]))
    lam = GradedMatrix.from_columns(
        k_gens.src_twists,
        [x for x, _ in lift_cols],
        [t for _, t in lift_cols],
        c.field,
    )
    pres = lam.hstack(k_rels)
    gens, pres = minimalize([k_gens, pres], active=[1])
    return Homology0(PresentedModule(pres), gens)


class FreeComplex:
    """Nonnegatively graded free complex: modules F_0, F_1, ... and maps d_k.

    maps[k-1] is d_k : F_k -> F_{k-1}.  Modules beyond the listed ones are
    zero.
    """

    __slots__ = ("modules", "maps", "field")

    def __init__(self, modules, maps, field):
        self.modules = [tuple(m) for m in modules]
        self.maps = list(maps)
        self.field = field
        for k, d in enumerate(self.maps):
            if tuple(d.tgt_twists) != self.modules[k] or tuple(d.src_twists) != self.modules[k + 1]:
                raise ShapeError("differential does not match module twists")

    @classmethod
    def from_maps(cls, maps, bottom=None):
        if not maps:
            return cls([tuple(bottom or ())], [], maps[0].field if maps else None)
        modules = [tuple(maps[0].tgt_twists)] + [tuple(d.src_twists) for d in maps]
        return cls(modules, maps, maps[0].field)

    def module(self, k):
        return self.modules[k] if 0 <= k < len(self.modules) else ()

    def map(self, k):
        """d_k : F_k -> F_{k-1}, a zero matrix when out of range."""
        if 1 <= k <= len(self.maps):
            return self.maps[k - 1]
        return GradedMatrix.zero(self.module(k - 1), self.module(k), self.field)

    def is_complex(self):
        for k in range(1, len(self.maps)):
            if not self.maps[k - 1].mul(self.maps[k]).is_zero():
                return False
        return True


class ChainMap:
    """f : P. -> Q. with components comps[k] : P_k -> Q_k."""

    __slots__ = ("src", "tgt", "comps")

    def __init__(self, src, tgt, comps):
        self.src = src
        self.tgt = tgt
        self.comps = list(comps)

    def comp(self, k):
        if 0 <= k < len(self.comps):
            return self.comps[k]
        return GradedMatrix.zero(self.tgt.module(k), self.src.module(k), self.src.field)

    def commutes(self):
        depth = max(len(self.src.maps), len(self.comps) - 1)
        for k in range(1, depth + 1):
            left = self.comp(k - 1).mul(self.src.map(k))
            right = self.tgt.map(k).mul(self.comp(k))
            if left != right:
                return False
        return True


def mapping_cone(chain_map):
    """Cone of f : P. -> Q. : the complex Q ⊕ P[1], d(q,p) = (dq + f p, -dp)."""
    if not chain_map.commutes():
        raise ShapeError("chain map does not commute with the differentials")
    src, tgt = chain_map.src, chain_map.tgt
    field = src.field
    depth = max(len(tgt.modules), len(src.modules) + 1)
    modules = []
    for k in range(depth):
        modules.append(tuple(tgt.module(k)) + tuple(src.module(k - 1)))
    maps = []
    for k in range(1, depth):
        tgt_blocks = [list(tgt.module(k - 1)), list(src.module(k - 2))]
        src_blocks = [list(tgt.module(k)), list(src.module(k - 1))]
        qk = tgt.map(k) if tgt_blocks[0] and src_blocks[0] else None
        fk = chain_map.comp(k - 1) if tgt_blocks[0] and src_blocks[1] else None
        pk = src.map(k - 1).neg() if tgt_blocks[1] and src_blocks[1] else None
        maps.append(
            block_matrix([[qk, fk], [None, pk]], tgt_blocks, src_blocks, field)
        )
    while modules and not modules[-1]:
        modules.pop()
        if len(maps) >= len(modules):
            maps.pop()
    return FreeComplex(modules, maps, field)


def complex_euler_rank(c, n):
    """Alternating sum of free-term piece ranks at degree n."""
    l1, l0, lm1 = c.terms()
    return l1.piece_dim(n) - l0.piece_dim(n) + lm1.piece_dim(n)
