"""Exception hierarchy shared by all reesmult modules."""


class ReesMultError(Exception):
    """Base class for every error raised by reesmult."""


class UsageError(ReesMultError):
    """Input violates a documented precondition."""


class EmptySpec(UsageError):
    pass


class NonCoprimeSemigroup(UsageError):
    pass


class UnitGenerator(UsageError):
    pass


class InvalidMonomial(UsageError):
    pass


class RingMismatch(UsageError):
    pass


class ZeroPower(UsageError):
    pass


class NotContained(UsageError):
    pass


class NotMPrimary(UsageError):
    pass


class QOutOfRange(UsageError):
    pass


class ElementNotInIdeal(UsageError):
    pass


class NotParameterSystem(UsageError):
    pass


class GuardExceeded(UsageError):
    pass


class BoxTooLarge(UsageError):
    pass


class GeneratorNotInN(UsageError):
    """A Laurent generator has a term outside the maximal homogeneous ideal."""


class StabilizationFailure(ReesMultError):
    """Finite differences did not settle before the configured cap."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class NonIntegralResult(ReesMultError):
    """An exact division that must be integral was not (internal inconsistency)."""


class CacheError(ReesMultError):
    pass


class CacheFormatError(CacheError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CacheInconsistency(CacheError):
    pass


class ParseError(UsageError):
    """DSL diagnostic carrying a 1-based source position."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        self.message = message
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class DSLSyntaxError(ParseError):
    pass


class UndeclaredRing(ParseError):
    pass


class UndeclaredIdeal(ParseError):
    pass


class DuplicateName(ParseError):
    pass


class ArityMismatch(ParseError):
    pass
