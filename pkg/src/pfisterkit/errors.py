"""Exception hierarchy.

Every error raised on purpose by the library derives from ``PfisterError`` so
callers (and the CLI) can separate computed outcomes from genuine bugs.
"""


class PfisterError(Exception):
    """Base class for all library errors."""


class UnsupportedField(PfisterError):
    pass


class WrongCharacteristic(PfisterError):
    pass


class ZeroInput(PfisterError):
    pass


class HeightExceeded(PfisterError):
    pass


class ParseError(PfisterError):
    pass


class DomainMismatch(PfisterError):
    pass


class NotAUnit(PfisterError):
    pass


class StageMismatch(PfisterError):
    pass


class NotFound(PfisterError):
    """A bounded search ended without a witness.

    This is not a correctness failure: the object searched for may simply not
    exist inside the search bound.
    """


class NonIntegralCoefficients(PfisterError):
    pass


class PrecisionExhausted(PfisterError):
    """A truncated expansion does not carry enough digits to decide a predicate."""


class DyadicResidue(PfisterError):
    pass


class NonUnitArtinSchreierSlot(PfisterError):
    pass


class BoundExceeded(PfisterError):
    pass


class SearchExhausted(PfisterError):
    pass


class AttemptsExhausted(PfisterError):
    pass


class HypothesisFailed(PfisterError):
    pass


class EvenValue(PfisterError):
    pass


class MismatchWitness(PfisterError):
    """A sample lies in exactly one of two rings that should coincide."""

    def __init__(self, message, sample=None):
        super().__init__(message)
        self.sample = sample


class NotGeometric(PfisterError):
    pass


class InseparableResidue(PfisterError):
    pass
