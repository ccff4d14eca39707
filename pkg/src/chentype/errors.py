"""Exception hierarchy shared by every module."""


class ChenTypeError(Exception):
    """Base class for engine errors."""


class NonRationalStructure(ChenTypeError):
    """A denominator that is not a monomial in delta, cos(phi), kappa, r."""


class MissingSymbol(ChenTypeError):
    pass


class DivisionNearZero(ChenTypeError):
    pass


class ConsistencyError(ChenTypeError):
    """Canonical and numeric zero tests disagree (an engine bug)."""


class MixedFrames(ChenTypeError):
    pass


class DegenerateForm(ChenTypeError):
    pass


class SymbolicUnavailable(ChenTypeError):
    """The requested quantity only exists numerically for this chart."""


class ExpressionBudgetExceeded(ChenTypeError):
    def __init__(self, size, budget):
        super().__init__(f"canonical numerator has {size} monomials (budget {budget})")
        self.size = size
        self.budget = budget


class IllConditionedSamples(ChenTypeError):
    pass


class ChartParseError(ChenTypeError):
    pass


class UnknownClaim(ChenTypeError):
    pass
