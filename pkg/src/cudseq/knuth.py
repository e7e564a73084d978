"""Knuth's 1965 completely uniformly distributed sequence K.

Building blocks: A^(n) divides the 2**n-ary Ford sequence of order n by
2**n; B^(n) concatenates n * 2**(2n) copies of A^(n); K concatenates
B^(1), B^(2), ... The alphabet grows exponentially with the segment
order, so segment sizes explode quickly -- everything here is exposed
as bounded-memory streams, never materialized.
"""

import itertools
from dataclasses import dataclass

from .debruijn import DEFAULT_CHUNK, ford_chunks, ford_digits
from .errors import InputError, check_magnitude
from .streams import TermStream

# Ford digit lists up to this length are generated once and reused for
# every repeated copy; longer ones are regenerated chunk by chunk.
CACHE_MAX = 1 << 22


@dataclass(frozen=True)
class SegmentSizes:
    """Exact sizes of the order-n building blocks."""

    n: int
    a_len: int  # |A^(n)| = 2**(n*n)
    b_reps: int  # copies of A^(n) inside B^(n) = n * 2**(2n)
    b_len: int  # |B^(n)| = b_reps * a_len


def segment_sizes(n: int) -> SegmentSizes:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"order must be an integer >= 1, got {n!r}")
    a_len = check_magnitude(2 ** (n * n), f"|A^({n})|")
    b_reps = n * 2 ** (2 * n)
    b_len = check_magnitude(b_reps * a_len, f"|B^({n})|")
    return SegmentSizes(n, a_len, b_reps, b_len)


def _repeated_ford_blocks(base, order, copies, length):
    """(den, nums) blocks for `copies` back-to-back Ford sequences."""
    if length <= CACHE_MAX:
        digits = ford_digits(base, order)
        for _ in range(copies):
            yield base, digits
    else:
        for _ in range(copies):
            for chunk in ford_chunks(base, order, DEFAULT_CHUNK):
                yield base, chunk


def a_sequence(n: int) -> TermStream:
    """A^(n): the 2**n-ary Ford sequence of order n divided by 2**n."""
    segment_sizes(n)  # capacity check
    den = 2**n
    return TermStream((den, chunk) for chunk in ford_chunks(den, n, DEFAULT_CHUNK))


def b_sequence(n: int) -> TermStream:
    """B^(n): n * 2**(2n) consecutive copies of A^(n)."""
    sizes = segment_sizes(n)
    return TermStream(_repeated_ford_blocks(2**n, n, sizes.b_reps, sizes.a_len))


def k_stream() -> TermStream:
    """The unbounded stream K = B^(1), B^(2), B^(3), ...

    Pull-based; memory use is independent of the position reached.
    Raises CapacityError once a segment's size arithmetic would exceed
    the magnitude limit (far beyond anything reachable by iteration).
    """

    def blocks():
        for n in itertools.count(1):
            sizes = segment_sizes(n)
            yield from _repeated_ford_blocks(2**n, n, sizes.b_reps, sizes.a_len)

    return TermStream(blocks())


def b_boundaries(limit: int) -> list:
    """Cumulative end positions of B^(1), B^(2), ... that are <= limit."""
    if limit < 1:
        raise InputError("limit must be >= 1")
    out = []
    total = 0
    for n in itertools.count(1):
        total += segment_sizes(n).b_len
        if total > limit:
            return out
        out.append(total)
