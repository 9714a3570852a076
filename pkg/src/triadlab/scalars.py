"""Exact scalar arithmetic: rationals and prime fields.

Every coefficient in the system is either a `fractions.Fraction` or an
`FpElement`; no floating point anywhere.  A `ScalarField` object knows how
to build and format its elements, so the rest of the code is agnostic to
the choice of field.
"""

from fractions import Fraction

from .errors import ParseError


class FpElement:
    """Element of the prime field F_p, stored canonically in [0, p)."""

    __slots__ = ("val", "p")

    def __init__(self, val, p):
        self.val = val % p
        self.p = p

    def __add__(self, other):
        return FpElement(self.val + other.val, self.p)

    def __sub__(self, other):
        return FpElement(self.val - other.val, self.p)

    def __mul__(self, other):
        return FpElement(self.val * other.val, self.p)

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __truediv__(self, other):
        if other.val == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return self * other.inverse()

    def inverse(self):
        return FpElement(pow(self.val, self.p - 2, self.p), self.p)

    def __pow__(self, n):
        return FpElement(pow(self.val, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == other % self.p
        return isinstance(other, FpElement) and self.val == other.val and self.p == other.p

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return str(self.val)


class ScalarField:
    """Descriptor for the active coefficient field (QQ or F_p)."""

    def __init__(self, char=0):
        if char and char < 2:
            raise ValueError("field characteristic must be 0 or a prime")
        self.char = char

    @property
    def name(self):
        return "QQ" if self.char == 0 else f"Fp:{self.char}"

    def __call__(self, n):
        """Coerce an integer (or Fraction, in char 0) to a field element."""
        if self.char == 0:
            return Fraction(n)
        return FpElement(int(n), self.char)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, ScalarField) and self.char == other.char

    def __hash__(self):
        return hash(self.char)

    def __repr__(self):
        return f"ScalarField({self.name})"


QQ = ScalarField(0)

DEFAULT_PRIME = 32003


def field_from_name(name):
    """Parse a field spec: "QQ" or "Fp:<p>" (bare "Fp" uses the default prime)."""
    name = name.strip()
    if name == "QQ":
        return QQ
    if name == "Fp":
        return ScalarField(DEFAULT_PRIME)
    if name.startswith("Fp:"):
        try:
            p = int(name[3:])
        except ValueError:
            raise ParseError(f"bad field spec {name!r}") from None
        return ScalarField(p)
    raise ParseError(f"unknown field {name!r}")


def format_scalar(c):
    """Canonical text for a coefficient."""
    return str(c)
