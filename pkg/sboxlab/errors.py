"""Exception hierarchy for sboxlab."""


class SboxLabError(Exception):
    """Base class for every error raised by sboxlab."""


class InvalidInputError(SboxLabError, ValueError):
    """Raised when an argument violates an operation's precondition."""


class SBoxFormatError(InvalidInputError):
    """Raised when S-Box text cannot be parsed into a permutation."""


class MalformedTokenError(SBoxFormatError):
    """Raised for a token that is not a byte value."""


class WrongCountError(SBoxFormatError):
    """Raised when an S-Box listing does not hold exactly 256 entries."""


class DuplicateValueError(SBoxFormatError):
    """Raised when a listing repeats a byte (and therefore misses another)."""

    def __init__(self, value: int, missing: list[int]) -> None:
        self.value = value
        self.missing = missing
        missing_str = ", ".join(f"0x{m:02X}" for m in missing[:8])
        super().__init__(
            f"duplicate value 0x{value:02X} in S-Box listing (missing: {missing_str})"
        )


class DegenerateOrbitError(SboxLabError):
    """Raised when an orbit is trapped in the all-zero fixed point."""


class UndefinedEntropyError(SboxLabError):
    """Raised when an entropy estimate has no matching template pairs."""


class InsufficientDataError(SboxLabError):
    """Raised when an estimator has too few points or empty correlation sums."""


class ConstructionFailedError(SboxLabError):
    """Raised when strong S-Box construction exhausts its restart budget."""

    def __init__(self, message: str, trace=None) -> None:
        super().__init__(message)
        self.trace = trace
