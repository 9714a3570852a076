"""Gröbner bases for submodules of graded free modules over k[a,X,Y,Z,T].

Vectors are sparse maps {component: Poly}.  The module order is
position-over-term: component index first (lower index wins), then the
base order on monomials.  Ranking earlier components strictly above later
ones makes the same machinery compute syzygies by elimination: append a
unit tail to each generator, take a basis of the graph submodule, and the
elements with vanishing head are exactly the syzygies.

Everything here assumes homogeneous input, which keeps S-pair processing
degree-by-degree (normal selection strategy).
"""

from .errors import ResourceLimitError, ShapeError
from .gradedmatrix import GradedMatrix
from .poly import Poly, mono_div, mono_divides, mono_key, mono_lcm, mono_wdeg
from .scalars import QQ

MAX_PAIRS = 200000


def vec_is_zero(v):
    return not v


def vec_add(u, v, field):
    out = dict(u)
    for c, p in v.items():
        q = out.get(c)
        q = p if q is None else q + p
        if q:
            out[c] = q
        elif c in out:
            del out[c]
    return out


def vec_neg(v):
    return {c: -p for c, p in v.items()}

def vec_sub(u, v, field):
    return vec_add(u, vec_neg(v), field)


def vec_term_mul(v, coeff, mono):
    if not coeff:
        return {}
    return {c: p.term_mul(coeff, mono) for c, p in v.items()}


def vec_scale(v, coeff):
    if not coeff:
        return {}
    return {c: p.scale(coeff) for c, p in v.items()}


def vec_lead(v):
    """(component, monomial, coefficient) of the largest term, POT order."""
    best = None
    for c in sorted(v):
        p = v[c]
        if p.is_zero:
            continue
        m, coeff = p.lead()
        best = (c, m, coeff)
        break
    return best


def vec_degree(v, twists):
    """External degree of a nonzero homogeneous vector."""
    for c, p in v.items():
        if not p.is_zero:
            return p.wdeg() + twists[c]
    return None


def vec_is_homogeneous(v, twists):
    degs = set()
    for c, p in v.items():
        if p.is_zero:
            continue
        if not p.is_homogeneous():
            return False
        degs.add(p.wdeg() + twists[c])
    return len(degs) <= 1


class GroebnerBasis:
    """Reduced basis of a submodule of a twisted free module."""

    __slots__ = ("elements", "twists", "field", "_by_comp")

    def __init__(self, elements, twists, field):
        self.elements = elements
        self.twists = tuple(twists)
        self.field = field
        self._by_comp = {}
        for g in elements:
            c, m, coeff = vec_lead(g)
            self._by_comp.setdefault(c, []).append((m, coeff, g))

    def __len__(self):
        return len(self.elements)

    def reducers(self, comp):
        return self._by_comp.get(comp, ())


def normal_form(v, gb):
    """Unique fully reduced remainder of v modulo the basis."""
    field = gb.field
    rem = {}
    p = dict(v)
    while p:
        lead = vec_lead(p)
        if lead is None:
            break
        c, m, coeff = lead
        hit = None
        for gm, gc, g in gb.reducers(c):
            if mono_divides(gm, m):
                hit = (gm, gc, g)
                break
        if hit is not None:
            gm, gc, g = hit
            p = vec_sub(p, vec_term_mul(g, coeff / gc, mono_div(m, gm)), field)
        else:
            rem_p = rem.get(c, Poly.zero(field))
            rem[c] = rem_p + Poly.term(coeff, m, field)
            pc = p[c] - Poly.term(coeff, m, field)
            if pc:
                p[c] = pc
            else:
                del p[c]
    return {c: q for c, q in rem.items() if q}


def _spair(f, g, field):
    cf, mf, kf = vec_lead(f)
    cg, mg, kg = vec_lead(g)
    l = mono_lcm(mf, mg)
    uf = vec_term_mul(f, field(1) / kf, mono_div(l, mf))
    ug = vec_term_mul(g, field(1) / kg, mono_div(l, mg))
    return vec_sub(uf, ug, field)


def _single_component(v):
    live = [c for c, p in v.items() if not p.is_zero]
    return live[0] if len(live) == 1 else None


def groebner_basis(gens, twists, field=QQ, max_pairs=MAX_PAIRS):
    """Buchberger with normal selection and the product/chain criteria.

    Deterministic: generators are taken in input order and ties are broken
    by (degree, index) on the pair queue.  The result is the reduced basis
    in a canonical order.
    """
    twists = tuple(twists)
    G = []
    for v in gens:
        v = {c: p for c, p in v.items() if not p.is_zero}
        if not vec_is_homogeneous(v, twists):
            raise ShapeError("generator is not homogeneous")
        if v:
            c, m, coeff = vec_lead(v)
            G.append(vec_scale(v, field(1) / coeff))

    import heapq

    pairs = []
    treated = set()

    def pair_degree(i, j):
        ci, mi, _ = vec_lead(G[i])
        cj, mj, _ = vec_lead(G[j])
        return mono_wdeg(mono_lcm(mi, mj)) + twists[ci]

    def push_pairs(j):
        cj, mj, _ = vec_lead(G[j])
        for i in range(j):
            ci, mi, _ = vec_lead(G[i])
            if ci != cj:
                continue
            if (
                _single_component(G[i]) is not None
                and _single_component(G[i]) == _single_component(G[j])
                and mono_lcm(mi, mj) == tuple(a + b for a, b in zip(mi, mj))
            ):
                # product criterion: coprime leads of one-component vectors
                treated.add((i, j))
                continue
            heapq.heappush(pairs, (pair_degree(i, j), i, j))

    for j in range(len(G)):
        push_pairs(j)

    processed = 0
    while pairs:
        deg, i, j = heapq.heappop(pairs)
        processed += 1
        if processed > max_pairs:
            raise ResourceLimitError("S-pair budget exhausted")

        ci, mi, _ = vec_lead(G[i])
        cj, mj, _ = vec_lead(G[j])
        lij = mono_lcm(mi, mj)
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            ck, mk, _ = vec_lead(G[k])
            if ck != ci or not mono_divides(mk, lij):
                continue
            a, b = (i, k) if i < k else (k, i)
            c, d = (j, k) if j < k else (k, j)
            # chain criterion, applied only to pairs already treated
            if (a, b) in treated and (c, d) in treated:
                skip = True
                break
        treated.add((i, j))
        if skip:
            continue

        gb_now = GroebnerBasis(G, twists, field)
        r = normal_form(_spair(G[i], G[j], field), gb_now)
        if r:
            c, m, coeff = vec_lead(r)
            G.append(vec_scale(r, field(1) / coeff))
            push_pairs(len(G) - 1)

    return _reduce_basis(G, twists, field)


def _reduce_basis(G, twists, field):
    # drop elements whose lead is divisible by another lead, then tail-reduce
    keep = []
    for i, g in enumerate(G):
        ci, mi, _ = vec_lead(g)
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            cj, mj, _ = vec_lead(h)
            if cj == ci and mono_divides(mj, mi):
                if mj != mi or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(g)

    reduced = []
    for idx, g in enumerate(keep):
        others = GroebnerBasis(keep[:idx] + keep[idx + 1 :], twists, field)
        r = normal_form(g, others)
        if r:
            c, m, coeff = vec_lead(r)
            reduced.append(vec_scale(r, field(1) / coeff))

    def sort_key(v):
        c, m, coeff = vec_lead(v)
        return (vec_degree(v, twists), c, tuple(-k for k in mono_key(m)))

    reduced.sort(key=sort_key)
    return GroebnerBasis(reduced, twists, field)


_graph_cache = {}


def _graph_basis(matrix):
    """GB of the graph {(column_j, e_j)}; heads rank above tails."""
    key = matrix
    hit = _graph_cache.get(key)
    if hit is not None:
        return hit
    field = matrix.field
    n_head = matrix.nrows
    twists = tuple(matrix.tgt_twists) + tuple(matrix.src_twists)
    gens = []
    for j in range(matrix.ncols):
        v = dict(matrix.column(j))
        v[n_head + j] = Poly.const(1, field)
        gens.append(v)
    gb = groebner_basis(gens, twists, field)
    result = (gb, n_head)
    _graph_cache[key] = result
    return result


def syzygies(matrix):
    """Generating syzygies of the columns, as a matrix into the source."""
    field = matrix.field
    gb, n_head = _graph_basis(matrix)
    cols = []
    degs = []
    for g in gb.elements:
        if any(c < n_head and not p.is_zero for c, p in g.items()):
            continue
        w = {c - n_head: p for c, p in g.items() if not p.is_zero}
        cols.append(w)
        degs.append(vec_degree(w, matrix.src_twists))
    order = sorted(range(len(cols)), key=lambda i: degs[i])
    cols = [cols[i] for i in order]
    degs = [degs[i] for i in order]
    return GradedMatrix.from_columns(matrix.src_twists, cols, degs, field)


def lift_through(matrix, vec):
    """Solve matrix * x = vec; None if vec is not in the column span."""
    field = matrix.field
    gb, n_head = _graph_basis(matrix)
    v = {c: p for c, p in vec.items() if not p.is_zero}
    r = normal_form(v, gb)
    if any(c < n_head and not p.is_zero for c, p in r.items()):
        return None
    return {c - n_head: -p for c, p in r.items() if not p.is_zero}


def member_of_columns(matrix, vec):
    return lift_through(matrix, vec) is not None


def span_gb(matrix):
    """GB of the submodule spanned by the columns (head parts of the graph)."""
    gb, n_head = _graph_basis(matrix)
    heads = []
    for g in gb.elements:
        h = {c: p for c, p in g.items() if c < n_head and not p.is_zero}
        if h:
            heads.append(h)
    return GroebnerBasis(heads, matrix.tgt_twists, matrix.field)
