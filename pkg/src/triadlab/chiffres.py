"""The numeric shorthand for twisted free modules.

A dissocié module  ⊕ B(-n_i)^{α_i}  is written  n_1^{α_1},...,n_r^{α_r};
a bare 0 denotes the untwisted free rank-one module.  The empty string is
the zero module.
"""

from math import comb

from .errors import ParseError


class Chiffres:
    """Sorted multiset of (twist, multiplicity) pairs."""

    __slots__ = ("items",)

    def __init__(self, items=()):
        agg = {}
        for twist, mult in items:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                agg[twist] = agg.get(twist, 0) + mult
        self.items = tuple(sorted(agg.items()))

    @classmethod
    def from_twists(cls, twists):
        agg = {}
        for t in twists:
            agg[t] = agg.get(t, 0) + 1
        return cls(agg.items())

    @property
    def rank(self):
        return sum(m for _, m in self.items)

    @property
    def c1(self):
        """First Chern number: minus the sum of twists with multiplicity."""
        return -sum(t * m for t, m in self.items)

    def twists(self):
        """Expanded ascending twist list, one entry per generator."""
        out = []
        for t, m in self.items:
            out.extend([t] * m)
        return out

    def concat(self, other):
        return Chiffres(self.items + other.items)

    def twisted(self, h):
        """Chiffres of the twist M(h): every n_i becomes n_i - h."""
        return Chiffres(tuple((t - h, m) for t, m in self.items))

    def piece_dim(self, n):
        """k[a]-rank of the degree-n graded piece (monomial count in X,Y,Z,T)."""
        return sum(m * monomial_count(n - t) for t, m in self.items)

    def min_twist(self):
        return self.items[0][0] if self.items else None

    def max_twist(self):
        return self.items[-1][0] if self.items else None

    def __eq__(self, other):
        return isinstance(other, Chiffres) and self.items == other.items

    def __hash__(self):
        return hash(self.items)

    def __bool__(self):
        return bool(self.items)

    def __repr__(self):
        return chiffres_format(self)


def monomial_count(d):
    """Number of monomials of degree d in four variables; 0 for d < 0."""
    return comb(d + 3, 3) if d >= 0 else 0


def chiffres_parse(text):
    """Parse "1^3,2^6"; the empty string is the zero module."""
    text = text.strip()
    if not text:
        return Chiffres()
    items = []
    for pos, raw in enumerate(text.split(",")):
        item = raw.strip()
        if not item:
            raise ParseError("empty chiffres item", pos)
        if "^" in item:
            base, _, exp = item.partition("^")
            try:
                twist, mult = int(base), int(exp)
            except ValueError:
                raise ParseError(f"malformed chiffres item {item!r}", pos) from None
            if mult <= 0:
                raise ParseError(f"nonpositive multiplicity in {item!r}", pos)
        else:
            try:
                twist, mult = int(item), 1
            except ValueError:
                raise ParseError(f"malformed chiffres item {item!r}", pos) from None
        items.append((twist, mult))
    return Chiffres(items)


def chiffres_format(c):
    if not c.items:
        return ""
    parts = []
    for twist, mult in c.items:
        parts.append(str(twist) if mult == 1 else f"{twist}^{mult}")
    return ",".join(parts)
