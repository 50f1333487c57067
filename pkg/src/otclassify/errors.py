"""Exception taxonomy shared by all modules.

Errors split into three families: bad input data (rejected before any
computation), exact mathematical preconditions that failed, and numerical
verdicts that could not be certified within the precision budget.  The CLI
maps these onto its exit-code contract.
"""


class OTError(Exception):
    """Base class for all library errors."""


# --- input rejection -------------------------------------------------------

class SchemaError(OTError):
    """Malformed job document or CLI input."""


class NotMonic(OTError):
    pass


class NotIrreducible(OTError):
    pass


class DegreeTooSmall(OTError):
    pass


class DivisionByZero(OTError, ZeroDivisionError):
    pass


class TooLarge(OTError):
    """Enumeration size exceeds the configured cap."""


# --- precondition failures -------------------------------------------------

class NotAUnit(OTError):
    pass


class NotTotallyPositive(OTError):
    pass


class DependentGenerators(OTError):
    """Carries the verified integer relation as ``.relation``."""

    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class NotAdmissible(OTError):
    pass


class NotSimpleType(OTError):
    pass


# --- certification failures ------------------------------------------------

class PrecisionExhausted(OTError):
    """The precision cap was reached before the goal width/separation."""


class Inconclusive(OTError):
    """Neither a certificate nor an exact witness at the precision cap."""


class Ambiguous(OTError):
    """Candidates not separable within the precision budget."""


class NoMatch(OTError):
    pass
