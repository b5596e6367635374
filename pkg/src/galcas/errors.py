"""Exception types shared across the package."""


class GalcasError(ValueError):
    pass


class ConfigurationError(GalcasError):
    """Raised for an (l, d, extended) combination that does not define an algebra."""


class DomainError(GalcasError):
    """Raised when an argument lies outside the domain of an operation."""
