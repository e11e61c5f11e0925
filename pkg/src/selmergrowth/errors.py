"""Exception types shared across the package."""


class SelmerGrowthError(Exception):
    """Base class for all package errors."""


class SingularModel(SelmerGrowthError):
    """The Weierstrass model has discriminant zero."""


class NotSemistable(SelmerGrowthError):
    """Some bad prime has additive reduction."""


class BadAtP(SelmerGrowthError):
    """The curve has bad reduction at p."""


class AdditiveReduction(SelmerGrowthError):
    """Reduction at the requested prime is additive."""


class BadReduction(SelmerGrowthError):
    """Operation requires good reduction at the prime."""


class EnumerationBoundExceeded(SelmerGrowthError):
    """Prime exceeds the configured point-enumeration bound."""


class UnsupportedP(SelmerGrowthError):
    """p lies outside the configured set for this operation."""


class DivisionByEll(SelmerGrowthError):
    """A quantity that must be a unit mod ell is divisible by ell."""


class InvalidJump(SelmerGrowthError):
    """Ramification jump outside the allowed range."""


class NotNormalized(SelmerGrowthError):
    """m still contains a p-th power factor."""


class DegenerateExtension(SelmerGrowthError):
    """m is a perfect p-th power, so the Kummer layer is trivial."""


class HypothesisFailure(SelmerGrowthError):
    """A hypothesis required by the dimension formula fails."""

    def __init__(self, which, message):
        super().__init__(message)
        self.which = which


class RangeTooLarge(SelmerGrowthError):
    """Scan range exceeds the configured limit."""


class PrecisionOverflow(SelmerGrowthError):
    """Requested series precision above the configured maximum."""


class InconclusivePrecision(SelmerGrowthError):
    """Precision too small to certify the requested invariant."""


class PrecisionTooLow(SelmerGrowthError):
    """Coefficient precision too small for an exact answer."""


class TruncationTooSmall(SelmerGrowthError):
    """Filtration truncation too shallow for a stable answer."""
