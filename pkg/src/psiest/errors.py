"""Exception types shared across the package."""


class PsiEstError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PsiEstError):
    """An observation or parameter lies outside the admissible set."""


class InvalidArgument(PsiEstError):
    """A structurally invalid argument (bad sizes, nonpositive counts, ...)."""


class InvalidParameter(InvalidArgument):
    """A family parameter lies outside its admissible range."""


class MissingClosedForm(PsiEstError):
    """A closed-form single-observation estimator was required but not supplied."""


class OutOfRange(PsiEstError):
    """Target value lies outside the convex hull of the function's range."""


class SignViolation(PsiEstError):
    """c*f(t)+d changes sign on the probe grid, so the Mobius transform is invalid."""


class DegenerateDerivative(PsiEstError):
    """A derivative needed by the computation is numerically zero."""


class DegenerateProbes(PsiEstError):
    """Probe points are insufficient to determine the fit (singular anchor system)."""


class EmptyLowerSet(PsiEstError):
    """No witness satisfies theta1(x) < t, so the infimum is over an empty set."""


class SolverError(PsiEstError):
    """Sign-change search failed; carries the partial result when available."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ExprError(PsiEstError):
    """Base class for expression-DSL errors."""


class ExprSyntaxError(ExprError):
    def __init__(self, offset, expected):
        super().__init__(f"syntax error at offset {offset}: expected {expected}")
        self.offset = offset
        self.expected = expected


class UnknownIdentifier(ExprError):
    def __init__(self, name, offset):
        super().__init__(f"unknown identifier {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class DataParseError(PsiEstError):
    """Malformed record in a data file."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyData(PsiEstError):
    """The data source contained no records."""


class NegativeWeight(DataParseError):
    def __init__(self, line):
        super().__init__(line, "negative weight")
