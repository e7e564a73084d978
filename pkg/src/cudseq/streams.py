"""Term streams: single-pass sequences of exact rationals.

A term is a (numerator, denominator) pair with 0 <= num < den, so every
value lies in [0, 1). Streams iterate term by term, but internally move
data in constant-denominator blocks `(den, nums)`; the statistics
drivers consume blocks directly, which keeps the hot loops out of
per-term Python code.
"""

from typing import Iterable, Iterator, Tuple

from .errors import ShortStreamError

RationalTerm = Tuple[int, int]

DEFAULT_CHUNK = 1 << 16


class TermStream:
    """Single-consumer stream of (num, den) terms backed by blocks."""

    def __init__(self, block_iter):
        self._blocks = block_iter
        self._consumed = False

    def _claim(self):
        if self._consumed:
            raise RuntimeError("stream already consumed; construct a new one")
        self._consumed = True

    def blocks(self):
        """The underlying (den, nums) block iterator. Consumes the stream."""
        self._claim()
        return self._blocks

    def __iter__(self) -> Iterator[RationalTerm]:
        for den, nums in self.blocks():
            for x in nums:
                yield (x, den)


def iter_blocks(terms, chunk_size: int = DEFAULT_CHUNK):
    """Adapt any term source to a (den, nums) block iterator.

    TermStream instances hand over their native blocks; other iterables
    are grouped into runs of equal denominator, split at chunk_size.
    """
    if isinstance(terms, TermStream):
        return terms.blocks()
    return _chunk_terms(iter(terms), chunk_size)


def _chunk_terms(it, chunk_size):
    den = None
    nums = []
    for num, d in it:
        if d != den or len(nums) >= chunk_size:
            if nums:
                yield den, nums
            den = d
            nums = []
        nums.append(num)
    if nums:
        yield den, nums


def take_blocks(blocks, total: int):
    """Yield blocks truncated to exactly `total` terms.

    Raises ShortStreamError if the source runs out first.
    """
    remaining = total
    if remaining <= 0:
        return
    for den, nums in blocks:
        if len(nums) >= remaining:
            yield den, nums[:remaining]
            return
        remaining -= len(nums)
        yield den, nums
    raise ShortStreamError(f"stream ended {remaining} terms short of {total}")


def take_terms(terms: Iterable[RationalTerm], n: int) -> list:
    """First n terms as a list; ShortStreamError if fewer are available."""
    out = []
    it = iter(terms)
    for _ in range(n):
        try:
            out.append(next(it))
        except StopIteration:
            raise ShortStreamError(
                f"stream ended {n - len(out)} terms short of {n}"
            ) from None
    return out
