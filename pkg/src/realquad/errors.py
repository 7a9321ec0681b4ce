"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(ValueError):
    """An argument exceeds the magnitude the implementation supports."""


class CacheFormatError(ValueError):
    """A unit cache file is malformed or fails validation."""

    def __init__(self, message: str, d: int | None = None) -> None:
        super().__init__(message)
        self.d = d
