"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ResourceLimitError(RuntimeError):
    """A request exceeds a configured computational ceiling."""


class CacheVersionError(RuntimeError):
    """A theta cache file was written by an incompatible format version."""


class CacheParseError(ValueError):
    """A theta cache file is malformed.  Carries the offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class BFileParseError(ValueError):
    """An OEIS b-file is malformed.  Carries the offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
