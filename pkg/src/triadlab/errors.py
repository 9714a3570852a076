"""Exception types shared across the package."""


class TriadlabError(Exception):
    """Base class for all domain errors."""


class ParseError(TriadlabError):
    """Syntax error in a polynomial, chiffres or session text.

    Carries the offending position when known.
    """

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DegreeError(TriadlabError):
    """A matrix entry violates the graded degree rule."""


class ShapeError(TriadlabError):
    """Matrix or complex dimensions do not match."""


class NotAComplexError(TriadlabError):
    """Composite of consecutive differentials is nonzero."""

    code = "NOT_A_COMPLEX"


class NotAMorphismError(TriadlabError):
    """The given matrices do not commute with the differentials."""

    code = "NOT_A_MORPHISM"


class FinitenessError(TriadlabError):
    """A module required to be finite over the base DVR is not."""


class InconclusiveError(TriadlabError):
    """A bounded decision procedure ran out of budget.

    Distinct from a negative answer.
    """

    code = "INCONCLUSIVE"


class ResourceLimitError(TriadlabError):
    """A computation exceeded its configured resource limits."""
