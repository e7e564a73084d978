"""Exception types and the shared magnitude guard."""

# All lengths, indices and segment sizes are kept below 2**128 so that the
# same arithmetic contracts hold on backends with fixed-width integers.
MAX_MAGNITUDE = 1 << 128


class CudseqError(Exception):
    """Base class for all package errors."""


class InputError(CudseqError):
    """Invalid argument or malformed input data."""


class CapacityError(CudseqError):
    """A size guard or the 128-bit magnitude limit was exceeded."""


class ShortStreamError(CudseqError):
    """The input stream ended before the requested number of terms."""


def check_magnitude(value: int, what: str) -> int:
    if value >= MAX_MAGNITUDE:
        raise CapacityError(f"{what} exceeds the 128-bit magnitude limit")
    return value
