"""Curve-family arithmetic: Euler characteristics, shifts, degree and genus.

Everything here is exact integer/rational combinatorics on chiffres.  The
Euler characteristic of a twisted structure sheaf on projective 3-space
is the polynomial value B(n) = (n+1)(n+2)(n+3)/6 at every integer, so
B(-1) = B(-2) = B(-3) = 0 and B(-4) = -1; degree and genus of a family
are read from B(n) - chi(J_C(n)) = dn + 1 - g.
"""

from fractions import Fraction
from itertools import combinations

from .chiffres import Chiffres
from .errors import ShapeError, TriadlabError
from .gradedmatrix import GradedMatrix
from .poly import Poly


class NumericPolynomial:
    """Rational-coefficient polynomial in n of degree at most three."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls):
        return cls(())

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return NumericPolynomial(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return NumericPolynomial([x * c for x in self.coeffs])

    def shift(self, h):
        """The polynomial n -> p(n + h)."""
        out = NumericPolynomial.zero()
        for i, c in enumerate(self.coeffs):
            # expand c * (n + h)^i
            term = [Fraction(0)] * (i + 1)
            for k in range(i + 1):
                term[k] = c * _binom(i, k) * Fraction(h) ** (i - k)
            out = out + NumericPolynomial(term)
        return out

    def __call__(self, n):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def coeff(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, NumericPolynomial) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*n^{i}" if i else str(c) for i, c in enumerate(self.coeffs))


def _binom(n, k):
    from math import comb

    return Fraction(comb(n, k))


_B_POLY = NumericPolynomial(
    [Fraction(1), Fraction(11, 6), Fraction(1), Fraction(1, 6)]
)  # (n+1)(n+2)(n+3)/6


def euler_B(n):
    """chi(O(n)) on projective 3-space, as a polynomial value at any integer."""
    v = _B_POLY(n)
    if v.denominator != 1:
        raise AssertionError("binomial polynomial must take integer values")
    return int(v)


def euler_poly(chiffres):
    """chi of the dissocié module: sum of B(n - twist) with multiplicity."""
    out = NumericPolynomial.zero()
    for twist, mult in chiffres.items:
        out = out + _B_POLY.shift(-twist).scale(mult)
    return out


class QFunction:
    """Finitely supported multiplicity function n -> q(n) >= 0."""

    __slots__ = ("values",)

    def __init__(self, values):
        vals = {}
        for n, q in dict(values).items():
            if q < 0:
                raise ShapeError("q values must be nonnegative")
            if q:
                vals[int(n)] = int(q)
        self.values = dict(sorted(vals.items()))

    @classmethod
    def parse(cls, text):
        """Parse "2:1,3:3" into a q-function."""
        vals = {}
        text = text.strip()
        if text:
            for item in text.split(","):
                n, _, q = item.partition(":")
                try:
                    vals[int(n)] = int(q)
                except ValueError:
                    raise ShapeError(f"bad q item {item!r}") from None
        return cls(vals)

    def chiffres(self):
        """The dissocié with multiplicity q(n) at twist n."""
        return Chiffres(tuple((n, q) for n, q in self.values.items()))

    def weighted_sum(self):
        return sum(n * q for n, q in self.values.items())

    def __eq__(self, other):
        return isinstance(other, QFunction) and self.values == other.values

    def __repr__(self):
        return ",".join(f"{n}:{q}" for n, q in self.values.items())


def triad_c1(terms):
    """deg of the kernel sheaf: c1(L_1) - c1(L_0) + c1(L_{-1})."""
    l1, l0, lm1 = terms
    return l1.c1 - l0.c1 + lm1.c1


def shift_h0(q, terms):
    """Minimal shift: sum of n q(n) plus the triad degree."""
    return q.weighted_sum() + triad_c1(terms)


class FamilyShape:
    __slots__ = ("p", "terms", "shift")

    def __init__(self, p, terms, shift):
        self.p = p
        self.terms = terms
        self.shift = shift


def degree_genus(shape):
    """(degree, genus) of the family with resolution 0 -> P -> N -> J_C(h) -> 0.

    chi(J_C(n+h)) is the alternating sum of the term Euler polynomials
    minus that of P; then B(n) - chi(J_C(n)) = dn + 1 - g.  The cubic and
    quadratic coefficients must cancel and d, g must be integers;
    consistency is overdetermined at five points.
    """
    l1, l0, lm1 = shape.terms
    ranks = l1.rank - l0.rank + lm1.rank - shape.p.rank
    if ranks != 1:
        raise ShapeError(f"RANK_MISMATCH: ideal sheaf rank is {ranks}, not 1")
    chi_shifted = (
        euler_poly(l1) - euler_poly(l0) + euler_poly(lm1) - euler_poly(shape.p)
    )
    chi = chi_shifted.shift(-shape.shift)
    line = _B_POLY - chi
    if line.coeff(2) != 0 or line.coeff(3) != 0:
        raise TriadlabError("NON_INTEGER: chi(J_C) is not of ideal-sheaf shape")
    d = line.coeff(1)
    g = 1 - line.coeff(0)
    if d.denominator != 1 or g.denominator != 1:
        raise TriadlabError("NON_INTEGER: degree or genus is not an integer")
    d, g = int(d), int(g)
    for n in range(5):
        if euler_B(n) - chi(n) != d * n + 1 - g:
            raise TriadlabError("NON_INTEGER: overdetermined check failed")
    return d, g


def koszul_q_sharp(n1, n2, n3, n4):
    """The step function of a Koszul module and its difference q.

    For 0 < n1 <= n2 <= n3 <= n4 and mu = max(n1+n4, n2+n3):
    0 below n1+n2, then 1, then 2 from n1+n3, then 3 from mu.
    """
    if not (0 < n1 <= n2 <= n3 <= n4):
        raise ShapeError("degrees must be ordered positive integers")
    mu = max(n1 + n4, n2 + n3)

    def q_sharp(n):
        if n < n1 + n2:
            return 0
        if n < n1 + n3:
            return 1
        if n < mu:
            return 2
        return 3

    values = {}
    for n in range(n1 + n2, mu + 1):
        dq = q_sharp(n) - q_sharp(n - 1)
        if dq:
            values[n] = dq
    return q_sharp, QFunction(values)


def koszul_complex(polys, field=None):
    """Koszul differentials of a sequence, on exterior-power bases.

    Stage k maps the basis e_S (S a k-subset, ascending) by the signed
    contraction sum; consecutive maps compose to zero.
    """
    if not polys:
        raise ShapeError("Koszul complex needs at least one element")
    field = field or polys[0].field
    for p in polys:
        if p.is_zero or not p.is_homogeneous():
            raise ShapeError("Koszul input must be nonzero homogeneous")
    degs = [p.wdeg() for p in polys]
    n = len(polys)
    maps = []
    for k in range(1, n + 1):
        src = list(combinations(range(n), k))
        tgt = list(combinations(range(n), k - 1))
        tgt_idx = {s: i for i, s in enumerate(tgt)}
        src_twists = [sum(degs[i] for i in s) for s in src]
        tgt_twists = [sum(degs[i] for i in s) for s in tgt]
        z = Poly.zero(field)
        rows = [[z] * len(src) for _ in tgt]
        for j, s in enumerate(src):
            for pos, i in enumerate(s):
                rest = tuple(x for x in s if x != i)
                sign = field(1) if pos % 2 == 0 else field(-1)
                rows[tgt_idx[rest]][j] = rows[tgt_idx[rest]][j] + polys[i].scale(sign)
        maps.append(GradedMatrix(tgt_twists, src_twists, rows, field))
    return maps


class FamilyReport:
    __slots__ = ("p", "terms", "h0", "degree", "genus", "kernel_chiffres", "fibers")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))

    def bracket(self):
        """The display  P -> [L1 -> L0 -> L-1]."""
        from .chiffres import chiffres_format

        def fmt(c):
            # the zero module displays as (0); a bare 0 is the untwisted ring
            return chiffres_format(c) if c else "(0)"

        l1, l0, lm1 = self.terms
        return f"{fmt(self.p)} -> [{fmt(l1)} -> {fmt(l0)} -> {fmt(lm1)}]"


def family_report(t, q):
    """Assemble the minimal-family data of a triad for a given q-function."""
    from .triads import fiber_functor

    terms = t.terms()
    p = q.chiffres()
    h0 = shift_h0(q, terms)
    d, g = degree_genus(FamilyShape(p, terms, h0))
    return FamilyReport(
        p=p,
        terms=terms,
        h0=h0,
        degree=d,
        genus=g,
        kernel_chiffres=t.kernel_chiffres(),
        fibers=(fiber_functor(t, "special"), fiber_functor(t, "generic")),
    )
