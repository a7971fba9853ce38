"""Exception types shared across the package."""


class FrobexError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(FrobexError, ValueError):
    """Group elements or vectors of different lengths were combined."""


class DomainError(FrobexError, ValueError):
    """An argument lies outside the domain of an operation."""


class AlgebraDefinitionError(FrobexError):
    """A multiplication oracle or presentation is inconsistent."""


class BudgetExceeded(AlgebraDefinitionError):
    """A rewriting oracle did not reach a normal form within its step budget."""


class HomogeneityError(AlgebraDefinitionError):
    """A form declared homogeneous has inconsistent mapping degrees."""


class UnsupportedStructure(FrobexError):
    """The input falls outside the structured cases this package handles."""


class ConfigError(FrobexError, ValueError):
    """A run configuration or config file is invalid."""
