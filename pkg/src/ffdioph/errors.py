"""Exception taxonomy shared by all modules.

Every refusal is loud and specific: operations never return garbage when the
answer would depend on coefficients beyond the known precision, and searches
whose success is mathematically guaranteed raise ``VerificationDefect`` when
they come up empty (the strongest regression signal the suite has).
"""


class FFDiophError(Exception):
    """Base class for all library errors."""


class IndeterminateZero(FFDiophError):
    """All known coefficients vanish but the element is not flagged exact."""


class PrecisionExceeded(FFDiophError):
    """The requested answer depends on coefficients beyond the known precision."""


class DivideByZero(FFDiophError, ZeroDivisionError):
    """Inversion of a (known) zero element."""


class DepthTooSmall(FFDiophError):
    """Continued-fraction depth does not cover the requested decomposition."""


class InvalidPrefix(FFDiophError):
    """A digit tuple violates the digit-degree constraints."""


class SpecExhausted(FFDiophError):
    """A partial-quotient spec ran out before the requested precision."""


class PrefixTooShort(FFDiophError):
    """A subsequence extraction cannot certify the next index from the prefix."""


class BudgetExceeded(FFDiophError):
    """An enumeration or construction exceeds the configured desk-scale budget."""


class CFTooShort(FFDiophError):
    """The continued fraction has not been computed far enough."""


class NotFoundAtBound(FFDiophError):
    """A bounded search failed; carries the bound that was exhausted."""

    def __init__(self, message: str, bound: int):
        super().__init__(message)
        self.bound = bound


class HypothesisFails(FFDiophError):
    """A transference instance was solved without checking its hypothesis."""


class NotExact(FFDiophError):
    """An operation that needs exact rational input received a truncation."""


class VerificationDefect(FFDiophError):
    """A property the theory guarantees failed to hold.  Exit code 2 material."""
