"""Exception hierarchy shared by all modules."""


class CremonaError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(CremonaError, ZeroDivisionError):
    pass


class MixedFields(CremonaError, TypeError):
    pass


class DegreeMismatch(CremonaError, ValueError):
    pass


class ZeroPolynomial(CremonaError, ValueError):
    pass


class SingularMatrix(CremonaError, ValueError):
    pass


class DegenerateComposition(CremonaError, ValueError):
    pass


class UnsupportedDegree(CremonaError, ValueError):
    pass


class IrrationalBasePoint(CremonaError, ValueError):
    pass


class DuplicatePoints(CremonaError, ValueError):
    pass


class CollinearBasePoints(CremonaError, ValueError):
    pass


class PatternMismatch(CremonaError, ValueError):
    pass


class HypothesisFailed(CremonaError, ValueError):
    def __init__(self, message, collinear=None):
        super().__init__(message)
        self.collinear = collinear


class GenericityFailure(CremonaError, RuntimeError):
    pass


class NotIdentity(CremonaError, ValueError):
    pass


class NotDeJonquieres(CremonaError, ValueError):
    pass


class Stuck(CremonaError):
    """The identity-word simplifier cannot make progress.

    ``reason`` is one of ``InfinitelyNearBasePoint``, ``IrrationalBasePoint``
    or ``GenericityFailure``; ``index`` is the corner (partial composition
    index) where progress halted; ``certificate`` holds the steps performed
    before halting.
    """

    REASONS = ("InfinitelyNearBasePoint", "IrrationalBasePoint", "GenericityFailure")

    def __init__(self, reason, index, detail="", certificate=None):
        if reason not in self.REASONS:
            raise ValueError(f"unknown Stuck reason {reason!r}")
        super().__init__(f"{reason} at index {index}: {detail}")
        self.reason = reason
        self.index = index
        self.detail = detail
        self.certificate = certificate


class SingularComponent(CremonaError, ValueError):
    def __init__(self, component, step=None):
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"matrix A{component} is singular{where}")
        self.component = component
        self.step = step


class SingularInput(CremonaError, ValueError):
    pass


class ParseError(CremonaError, ValueError):
    def __init__(self, message, line=1, column=1, expected=None):
        exp = f" (expected {expected})" if expected else ""
        super().__init__(f"line {line}, column {column}: {message}{exp}")
        self.line = line
        self.column = column
        self.expected = expected
