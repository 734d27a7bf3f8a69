class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RangeError(ValueError):
    """An argument is valid mathematically but outside the supported range."""


class SizeError(ValueError):
    """A brute-force enumeration was requested beyond its size cap."""
