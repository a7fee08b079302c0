"""Exception types shared across the toolkit."""


class PhilabError(Exception):
    """Base class for all toolkit errors."""


class InvalidOrder(PhilabError):
    """Requested ring order is not allowed (the zero ring is excluded)."""


class TooLarge(PhilabError):
    """Construction would exceed the configured order cap."""


class InvalidModulus(PhilabError):
    """A prime modulus was required."""


class InvalidModule(PhilabError):
    """Module action failed the bilinearity/unitality verification."""


class PhiRingRequired(PhilabError):
    """Operation is only defined when the nilradical is a divided prime."""


class MixedRings(PhilabError):
    """Operands belong to different rings."""


class MixedDomains(PhilabError):
    """Operands belong to different domain handles."""


class BudgetExceeded(PhilabError):
    """An enumeration or sweep exceeded its configured budget."""


class NotPrime(PhilabError):
    """A prime ideal was required."""


class ZeroIdeal(PhilabError):
    """A nonzero ideal was required."""


class ZeroIdealResidualDividend(PhilabError):
    """Residual (I : J) requires J nonzero."""


class OutOfTableRange(PhilabError):
    """Class-number data is not available for this discriminant."""


class NotNonnil(PhilabError):
    """A nonnil ideal (one generator outside the nilradical) was required."""


class NotContained(PhilabError):
    """Expected I to be contained in J."""


class NotPhiRing(PhilabError):
    """The ring is not a phi-ring; the check does not apply."""


class UnsupportedFamily(PhilabError):
    """The check is only implemented for a specific ring family."""


class InternalInconsistency(PhilabError):
    """Two independently computed answers disagree; implementation bug."""


class ParseError(PhilabError):
    """A ring/domain/corpus spec string failed to parse."""

    def __init__(self, message: str, pos: int = 0):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos
