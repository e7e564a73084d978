"""Ford (de Bruijn) sequence generation, verification and counting.

A b-ary de Bruijn sequence of order k has length b**k and, read
cyclically, contains every b-ary word of length k exactly once. The
Ford sequence F^(b, k) is the lexicographically least one; it is
generated here as the in-order concatenation of the Lyndon words whose
length divides k, in constant amortized time per digit.
"""

from dataclasses import dataclass
from math import factorial
from typing import Iterator

from ._backend import kernels
from .errors import CapacityError, InputError, check_magnitude

DEFAULT_CHUNK = 1 << 16

# Materializing a full sequence (lists, DigitSeq) is capped; streaming is not.
MATERIALIZE_MAX = 1 << 26

# Exhaustive search guard for enumerate_debruijn.
ENUMERATE_MAX_LENGTH = 12


def _check_base(base) -> int:
    if not isinstance(base, int) or base < 1:
        raise InputError(f"base must be an integer >= 1, got {base!r}")
    return base


def _check_order(order) -> int:
    if not isinstance(order, int) or order < 1:
        raise InputError(f"order must be an integer >= 1, got {order!r}")
    return order


@dataclass(frozen=True)
class DigitSeq:
    """A finite sequence of base-b digits."""

    base: int
    digits: tuple

    def __post_init__(self):
        _check_base(self.base)
        for d in self.digits:
            if not isinstance(d, int) or not 0 <= d < self.base:
                raise InputError(f"digit {d!r} out of range for base {self.base}")

    def __len__(self) -> int:
        return len(self.digits)


def ford_length(base: int, order: int) -> int:
    """Length of F^(base, order), i.e. base**order, capacity-checked."""
    _check_base(base)
    _check_order(order)
    return check_magnitude(base**order, f"sequence length {base}**{order}")


def ford_chunks(base: int, order: int, chunk_size: int = DEFAULT_CHUNK):
    """Iterate over the digits of F^(base, order) in list chunks."""
    ford_length(base, order)
    if chunk_size < 1:
        raise InputError("chunk_size must be >= 1")
    return kernels.ford_chunks(base, order, chunk_size)


def ford_stream(base: int, order: int) -> Iterator[int]:
    """Yield the digits of the Ford sequence F^(base, order).

    Emits exactly base**order digits; memory stays O(order).
    """
    for chunk in ford_chunks(base, order):
        yield from chunk


def ford_digits(base: int, order: int) -> list:
    """The digits of F^(base, order) as a list (guarded materialization)."""
    length = ford_length(base, order)
    if length > MATERIALIZE_MAX:
        raise CapacityError(
            f"refusing to materialize {length} digits; use ford_stream/ford_chunks"
        )
    out = []
    for chunk in ford_chunks(base, order):
        out.extend(chunk)
    return out


def ford_digitseq(base: int, order: int) -> DigitSeq:
    """F^(base, order) wrapped as a DigitSeq."""
    return DigitSeq(base, tuple(ford_digits(base, order)))


def is_debruijn(seq: DigitSeq, order: int) -> bool:
    """True iff seq is a de Bruijn sequence of the given order for its base.

    Checks that len(seq) == base**order and that the base**order cyclic
    windows of length `order` are pairwise distinct (hence each possible
    word occurs exactly once). A wrong length returns False.
    """
    _check_order(order)
    b = seq.base
    digits = seq.digits
    length = len(digits)
    if length != b**order:
        return False
    if b == 1:
        return True  # single window, the all-zero word
    seen = bytearray(length)
    modulus = b ** (order - 1)
    code = 0
    for i in range(order):
        code = code * b + digits[i]
    for i in range(length):
        if seen[code]:
            return False
        seen[code] = 1
        code = (code % modulus) * b + digits[(i + order) % length]
    return True


def word_occurrences(seq: DigitSeq, word: DigitSeq) -> int:
    """Number of cyclic windows of seq equal to word."""
    if seq.base != word.base:
        raise InputError("sequence and word must share the same base")
    m = len(word)
    n = len(seq)
    if m > n:
        raise InputError("word longer than sequence")
    digits = seq.digits
    target = word.digits
    doubled = digits + digits[: m - 1] if m > 1 else digits
    return sum(1 for i in range(n) if doubled[i : i + m] == target)


def best_count(base: int, order: int) -> int:
    """Number of distinct b-ary de Bruijn sequences of the given order.

    Evaluates (b!)**(b**(k-1)) / b**k exactly; the division always comes
    out even. Counts cyclic sequences, one representative per rotation
    class (the convention matched by enumerate_debruijn).
    """
    _check_base(base)
    _check_order(order)
    if base < 2:
        raise InputError("best_count requires base >= 2")
    numerator = factorial(base) ** (base ** (order - 1))
    count, rem = divmod(numerator, base**order)
    if rem:
        raise AssertionError("de Bruijn count division was not exact")
    return count


def enumerate_debruijn(base: int, order: int) -> list:
    """All de Bruijn sequences of the given base/order, canonicalized.

    Each sequence is reported at its lexicographically least rotation
    (which always begins with `order` zeros), and the list is sorted;
    the first entry is therefore the Ford sequence. Guarded to tiny
    sizes: backtracking explores every completion of the zero prefix.
    """
    _check_base(base)
    _check_order(order)
    if base < 2:
        raise InputError("enumerate_debruijn requires base >= 2")
    length = base**order
    if length > ENUMERATE_MAX_LENGTH:
        raise CapacityError(
            f"enumerate_debruijn limited to base**order <= {ENUMERATE_MAX_LENGTH}"
        )
    k = order
    modulus = base ** (k - 1)
    seq = [0] * length
    used = bytearray(length)
    used[0] = 1  # the all-zero word from the canonical prefix
    results = []

    def wrap_ok() -> bool:
        # windows that wrap past the end; all must be new and distinct
        extra = set()
        for i in range(length - k + 1, length):
            code = 0
            for j in range(k):
                code = code * base + seq[(i + j) % length]
            if used[code] or code in extra:
                return False
            extra.add(code)
        return True

    def dfs(pos: int, code: int) -> None:
        # placing seq[pos] completes the linear window starting at pos-k+1
        if pos == length:
            if k == 1 or wrap_ok():
                results.append(DigitSeq(base, tuple(seq)))
            return
        base_code = (code % modulus) * base
        for d in range(base):
            nxt = base_code + d
            if not used[nxt]:
                used[nxt] = 1
                seq[pos] = d
                dfs(pos + 1, nxt)
                used[nxt] = 0

    dfs(k, 0)
    return results
