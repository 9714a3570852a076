"""Sparse polynomials in B = k[a,X,Y,Z,T] with a of weighted degree zero.

Monomials are exponent tuples (e_a, e_X, e_Y, e_Z, e_T); the weighted
degree ignores the a-exponent.  The term order is graded reverse
lexicographic on (X,Y,Z,T), with the a-power breaking ties last (higher
power of a is larger, so division chains terminate).
"""

from .errors import ParseError
from .scalars import QQ
from .unipoly import UPoly

VARS = ("a", "X", "Y", "Z", "T")
NVARS = 5

ONE_MONO = (0, 0, 0, 0, 0)


def mono_wdeg(m):
    """Weighted degree: the a-exponent contributes nothing."""
    return m[1] + m[2] + m[3] + m[4]


def mono_key(m):
    """Sort key: larger key = larger monomial (grevlex, a last)."""
    return (mono_wdeg(m), -m[4], -m[3], -m[2], -m[1], m[0])


def mono_mul(m, n):
    return tuple(a + b for a, b in zip(m, n))


def mono_divides(m, n):
    """True iff m divides n."""
    return all(a <= b for a, b in zip(m, n))


def mono_div(n, m):
    """Quotient n/m; caller guarantees divisibility."""
    return tuple(b - a for a, b in zip(m, n))


def mono_lcm(m, n):
    return tuple(max(a, b) for a, b in zip(m, n))


def mono_format(m):
    parts = []
    for v, e in zip(VARS, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


class Poly:
    """Immutable sparse polynomial over an exact scalar field."""

    __slots__ = ("terms", "field")

    def __init__(self, terms, field=QQ):
        self.terms = {m: c for m, c in terms.items() if c}
        self.field = field

    @classmethod
    def zero(cls, field=QQ):
        return cls({}, field)

    @classmethod
    def const(cls, c, field=QQ):
        return cls({ONE_MONO: field(c)}, field)

    @classmethod
    def var(cls, name, field=QQ):
        i = VARS.index(name)
        mono = tuple(1 if j == i else 0 for j in range(NVARS))
        return cls({mono: field(1)}, field)

    @classmethod
    def term(cls, c, mono, field=QQ):
        return cls({mono: c}, field)

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Poly(out, self.field)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m)
                s = c1 * c2 if s is None else s + c1 * c2
                out[m] = s
        return Poly(out, self.field)

    def scale(self, c):
        if not c:
            return Poly.zero(self.field)
        return Poly({m: x * c for m, x in self.terms.items()}, self.field)

    def term_mul(self, c, mono):
        """Multiply by the single term c * x^mono."""
        if not c:
            return Poly.zero(self.field)
        return Poly({mono_mul(m, mono): x * c for m, x in self.terms.items()}, self.field)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def lead(self):
        """(monomial, coefficient) of the leading term; None if zero."""
        if not self.terms:
            return None
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def wdeg(self):
        """Weighted degree of a homogeneous polynomial; None if zero."""
        if not self.terms:
            return None
        return max(mono_wdeg(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {mono_wdeg(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d):
        return Poly({m: c for m, c in self.terms.items() if mono_wdeg(m) == d}, self.field)

    def specialize_a(self, value=None):
        """Substitute a := 0 (default) or a := value (a scalar)."""
        out = {}
        for m, c in self.terms.items():
            if m[0]:
                if value is None or not value:
                    continue
                c = c * value ** m[0]
            key = (0,) + m[1:]
            s = out.get(key)
            s = c if s is None else s + c
            out[key] = s
        return Poly(out, self.field)

    def coeff_in_a(self):
        """A weighted-degree-0 polynomial as a UPoly in a."""
        vals = {}
        for m, c in self.terms.items():
            if mono_wdeg(m) != 0:
                raise ValueError("polynomial has positive weighted degree")
            vals[m[0]] = c
        if not vals:
            return UPoly((), self.field)
        top = max(vals)
        return UPoly([vals.get(i, self.field(0)) for i in range(top + 1)], self.field)

    @classmethod
    def from_upoly(cls, up, field=None):
        field = field or up.field
        return cls(
            {(i, 0, 0, 0, 0): c for i, c in enumerate(up.coeffs) if c},
            field,
        )

    def __repr__(self):
        return format_poly(self)


def format_poly(p):
    """Canonical text form; format then parse is the identity."""
    if p.is_zero:
        return "0"
    monos = sorted(p.terms, key=mono_key, reverse=True)
    out = []
    for i, m in enumerate(monos):
        c = p.terms[m]
        neg = _is_negative(c)
        mag = -c if neg else c
        body = _term_text(mag, m, p.field)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _is_negative(c):
    try:
        return c < 0
    except TypeError:
        return False


def _term_text(c, m, field):
    mono = mono_format(m)
    if not mono:
        return _coeff_text(c)
    if c == field(1):
        return mono
    return f"{_coeff_text(c)}*{mono}"


def _coeff_text(c):
    s = str(c)
    return s


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self):
        ch = self.peek()
        if ch is not None:
            self.pos += 1
        return ch

    def take_int(self):
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected integer", start)
        return int(self.text[start : self.pos])


def parse_poly(text, field=QQ):
    """Parse the expression grammar over variables a, X, Y, Z, T."""
    toks = _Tokens(text)
    p = _parse_expr(toks, field)
    if toks.peek() is not None:
        raise ParseError(f"unexpected character {toks.peek()!r}", toks.pos)
    return p


def _parse_expr(toks, field):
    sign = 1
    if toks.peek() == "-":
        toks.take()
        sign = -1
    elif toks.peek() == "+":
        toks.take()
    p = _parse_term(toks, field)
    if sign < 0:
        p = -p
    while toks.peek() in ("+", "-"):
        op = toks.take()
        q = _parse_term(toks, field)
        p = p + q if op == "+" else p - q
    return p


def _parse_term(toks, field):
    p = _parse_factor(toks, field)
    while True:
        ch = toks.peek()
        if ch == "*":
            toks.take()
            p = p * _parse_factor(toks, field)
        elif ch is not None and (ch.isdigit() or ch in VARS or ch == "("):
            p = p * _parse_factor(toks, field)
        else:
            return p


def _parse_factor(toks, field):
    p = _parse_primary(toks, field)
    while toks.peek() == "^":
        toks.take()
        e = toks.take_int()
        p = _poly_pow(p, e, field)
    return p


def _poly_pow(p, e, field):
    out = Poly.const(1, field)
    for _ in range(e):
        out = out * p
    return out


def _parse_primary(toks, field):
    ch = toks.peek()
    if ch is None:
        raise ParseError("unexpected end of input", toks.pos)
    if ch == "(":
        toks.take()
        p = _parse_expr(toks, field)
        if toks.peek() != ")":
            raise ParseError("expected ')'", toks.pos)
        toks.take()
        return p
    if ch.isdigit():
        n = toks.take_int()
        if toks.peek() == "/":
            toks.take()
            d = toks.take_int()
            if field.char == 0:
                from fractions import Fraction

                return Poly.const(Fraction(n, d), field)
            return Poly.term(field(n) / field(d), ONE_MONO, field)
        return Poly.const(n, field)
    if ch in VARS:
        toks.take()
        return Poly.var(ch, field)
    raise ParseError(f"unknown identifier {ch!r}", toks.pos)
