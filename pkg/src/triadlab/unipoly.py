"""Univariate polynomials in the degree-zero variable a, and their localization.

`UPoly` is k[a] with exact coefficients.  `LocalFrac` is the localization
of k[a] at the prime (a): a fraction num/den whose denominator has nonzero
constant term.  LocalFrac is the coefficient ring A — a discrete valuation
ring with uniformizer a — used wherever unit pivoting is required.
"""

from .scalars import QQ


class UPoly:
    """Dense univariate polynomial over a scalar field, low degree first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field=QQ):
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        self.coeffs = tuple(coeffs)
        self.field = field

    @classmethod
    def const(cls, c, field=QQ):
        return cls((field(c),), field)

    @classmethod
    def a_power(cls, m, field=QQ):
        """The monomial a^m."""
        return cls((field(0),) * m + (field(1),), field)

    @property
    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Degree in a; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def ord_a(self):
        """Valuation at a; None for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def at_zero(self):
        """Constant term (the value at a = 0)."""
        return self.coeffs[0] if self.coeffs else self.field(0)

    def is_unit_local(self):
        """True iff invertible in the localization at (a)."""
        return bool(self.coeffs) and bool(self.coeffs[0])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field(0)
        cs = [
            (self.coeffs[i] if i < len(self.coeffs) else z)
            + (other.coeffs[i] if i < len(other.coeffs) else z)
            for i in range(n)
        ]
        return UPoly(cs, self.field)

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return UPoly((), self.field)
        z = self.field(0)
        cs = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(other.coeffs):
                if cj:
                    cs[i + j] = cs[i + j] + ci * cj
        return UPoly(cs, self.field)

    def scale(self, c):
        return UPoly([x * c for x in self.coeffs], self.field)

    def divmod(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        z = self.field(0)
        quo = [z] * max(0, len(rem) - dq)
        while len(rem) > dq or (len(rem) == dq + 1 and dq >= 0 and any(rem)):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) <= dq:
                break
            c = rem[-1] / lead
            shift = len(rem) - 1 - dq
            quo[shift] = quo[shift] + c
            for j, oc in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - c * oc
        return UPoly(quo, self.field), UPoly(rem, self.field)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other):
        x, y = self, other
        while not y.is_zero:
            x, y = y, x % y
        if x.is_zero:
            return x
        return x.scale(self.field(1) / x.coeffs[-1])

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(self.field(1) / self.coeffs[-1])

    def truncate(self, m):
        """Reduce modulo a^m."""
        return UPoly(self.coeffs[:m], self.field)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "a" if i == 1 else f"a^{i}"
                parts.append(head if c == self.field(1) else f"{c}*{head}")
        return " + ".join(parts)


def upoly_lcm(x, y):
    if x.is_zero or y.is_zero:
        return UPoly((), x.field)
    g = x.gcd(y)
    return ((x * y) // g).monic()


class LocalFrac:
    """Element of k[a] localized at (a): num/den with den(0) != 0.

    Kept canonical: gcd(num, den) trivial, den monic.  A unit of the
    localization is an element whose numerator also has nonzero constant
    term.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        field = num.field
        if den is None or den.degree() == 0:
            # constant denominator: fold it into the numerator
            if den is not None:
                c = den.at_zero()
                if not c:
                    raise ZeroDivisionError("denominator vanishes at a = 0")
                if c != field(1):
                    num = num.scale(field(1) / c)
            self.num = num
            self.den = UPoly((field(1),), field)
            return
        if den.is_zero or not den.is_unit_local():
            raise ZeroDivisionError("denominator vanishes at a = 0")
        if num.is_zero:
            den = UPoly.const(1, field)
        else:
            g = num.gcd(den)
            if g.degree() > 0:
                num, den = num // g, den // g
            lead = den.coeffs[-1]
            if lead != field(1):
                inv = field(1) / lead
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_upoly(cls, p):
        return cls(p)

    @classmethod
    def const(cls, c, field=QQ):
        return cls(UPoly.const(c, field))

    @property
    def field(self):
        return self.num.field

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_unit(self):
        return self.num.is_unit_local()

    def valuation(self):
        """a-adic valuation; None for zero."""
        return self.num.ord_a()

    def _den_trivial(self):
        return len(self.den.coeffs) == 1

    def __add__(self, other):
        if self._den_trivial() and other._den_trivial():
            return LocalFrac(self.num + other.num)
        return LocalFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if self._den_trivial() and other._den_trivial():
            return LocalFrac(self.num - other.num)
        return LocalFrac(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return LocalFrac(-self.num, self.den)

    def __mul__(self, other):
        if self._den_trivial() and other._den_trivial():
            return LocalFrac(self.num * other.num)
        return LocalFrac(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        """Exact division in the localization: valuations must allow it."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero")
        if self.is_zero:
            return self
        k = other.valuation()
        if k:
            if self.valuation() < k:
                raise ZeroDivisionError("quotient leaves the localization")
            num = UPoly(self.num.coeffs[k:], self.num.field)
            oth = UPoly(other.num.coeffs[k:], other.num.field)
            return LocalFrac(num * other.den, self.den * oth)
        return LocalFrac(self.num * other.den, self.den * other.num)

    def reduce_mod(self, m):
        """Canonical representative modulo a^m, as a UPoly of degree < m."""
        inv = _invert_series(self.den, m)
        return (self.num * inv).truncate(m)

    def __eq__(self, other):
        return (
            isinstance(other, LocalFrac)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        if self.den == UPoly.const(1, self.field):
            return repr(self.num)
        return f"({self.num})/({self.den})"


def _invert_series(den, m):
    """Power-series inverse of den modulo a^m (den(0) != 0)."""
    field = den.field
    inv0 = field(1) / den.at_zero()
    out = [inv0]
    for n in range(1, m):
        acc = field(0)
        for j in range(1, min(n, den.degree()) + 1):
            acc = acc + den.coeffs[j] * out[n - j]
        out.append(-inv0 * acc)
    return UPoly(out, field)
