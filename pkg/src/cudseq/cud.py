"""The linear-alphabet construction L^(t) and its prefix arithmetic.

C^(n) divides the n-ary Ford sequence of order n by n; D^(n, t) repeats
it t(n) times; L^(t) concatenates D^(1, t), D^(2, t), ... for a
repetition schedule t. With t non-decreasing and n/t(n) -> 0 the stream
is completely uniformly distributed; the schedule is supplied as a
GrowthFn and checked at desk scale by validate_growth.

Positions are 1-based. A prefix length N decomposes uniquely as

    N = sum_{s<r} t(s) * s**s  +  q * r**r  +  p

with 0 <= q < t(r) and 1 <= p <= r**r: r is the order of the rightmost
(possibly incomplete) D-segment, q the complete C-copies before the
current one, and p the position inside it. `locate` computes this
decomposition arithmetically; LStream tracks it incrementally while
iterating, so the two can be cross-checked.
"""

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .debruijn import DEFAULT_CHUNK, ford_chunks, ford_digits
from .errors import InputError, check_magnitude
from .knuth import CACHE_MAX
from .streams import RationalTerm, TermStream


class GrowthFn:
    """Repetition schedule t: positive integers, queried at n >= 1.

    Built-in kinds `identity` and `square`, or a finite user table
    covering n = 1..len(table) contiguously. Values must be >= 1; the
    schedule's monotonicity is a separate check (validate_growth), so a
    decreasing table can be constructed and then reported against.
    """

    def __init__(self, kind: str, fn: Callable[[int], int], label: str):
        self.kind = kind
        self._fn = fn
        self.label = label

    @classmethod
    def identity(cls) -> "GrowthFn":
        return cls("identity", lambda n: n, "id")

    @classmethod
    def square(cls) -> "GrowthFn":
        return cls("square", lambda n: n * n, "sq")

    @classmethod
    def from_table(cls, pairs) -> "GrowthFn":
        pairs = list(pairs)
        if not pairs:
            raise InputError("growth table must not be empty")
        table = {}
        for n, value in pairs:
            if not isinstance(n, int) or not isinstance(value, int):
                raise InputError("growth table entries must be integers")
            if value < 1:
                raise InputError(f"growth value t({n}) = {value} must be >= 1")
            if n in table:
                raise InputError(f"duplicate growth table entry for n = {n}")
            table[n] = value
        top = max(table)
        if set(table) != set(range(1, top + 1)):
            raise InputError("growth table must cover n = 1..max contiguously")

        def fn(n: int) -> int:
            if n not in table:
                raise InputError(f"growth table does not cover n = {n}")
            return table[n]

        label = "table:" + ",".join(f"{n}={table[n]}" for n in sorted(table))
        return cls("table", fn, label)

    @classmethod
    def parse(cls, spec: str) -> "GrowthFn":
        """Parse a growth spec string: `id`, `sq`, or `table:1=1,2=4,...`."""
        if spec == "id":
            return cls.identity()
        if spec == "sq":
            return cls.square()
        if spec.startswith("table:"):
            pairs = []
            for item in spec[len("table:") :].split(","):
                n_str, _, v_str = item.partition("=")
                try:
                    pairs.append((int(n_str), int(v_str)))
                except ValueError:
                    raise InputError(f"bad growth table entry {item!r}") from None
            return cls.from_table(pairs)
        raise InputError(f"unknown growth spec {spec!r} (expected id, sq or table:...)")

    def __call__(self, n: int) -> int:
        if not isinstance(n, int) or n < 1:
            raise InputError(f"growth functions are defined for n >= 1, got {n!r}")
        value = self._fn(n)
        if value < 1:
            raise InputError(f"growth value t({n}) = {value} must be >= 1")
        return value

    def __repr__(self):
        return f"GrowthFn({self.label})"


@dataclass(frozen=True)
class Locator:
    """Decomposition of a 1-based prefix length N (see module docstring)."""

    r: int
    q: int
    p: int


@dataclass(frozen=True)
class ValidationReport:
    """Result of validate_growth."""

    ok: bool
    first_violation: Optional[int]
    ratios: tuple
    warning: Optional[str]


def c_sequence(n: int) -> TermStream:
    """C^(n): the n-ary Ford sequence of order n divided by n."""
    if not isinstance(n, int) or n < 1:
        raise InputError(f"order must be an integer >= 1, got {n!r}")
    check_magnitude(n**n, f"|C^({n})|")
    return TermStream((n, chunk) for chunk in ford_chunks(n, n, DEFAULT_CHUNK))


def d_sequence(n: int, t: GrowthFn) -> TermStream:
    """D^(n, t): t(n) consecutive copies of C^(n)."""
    if not isinstance(n, int) or n < 1:
        raise InputError(f"order must be an integer >= 1, got {n!r}")
    length = check_magnitude(n**n, f"|C^({n})|")
    check_magnitude(t(n) * length, f"|D^({n})|")
    return TermStream(_d_blocks(n, t(n), length))


def _d_blocks(n, copies, length):
    if length <= CACHE_MAX:
        digits = ford_digits(n, n)
        for _ in range(copies):
            yield n, digits
    else:
        for _ in range(copies):
            for chunk in ford_chunks(n, n, DEFAULT_CHUNK):
                yield n, chunk


class LStream(TermStream):
    """The unbounded stream L^(t) with incremental position tracking.

    While iterating term by term, the stream maintains the (r, q, p)
    decomposition of the number of terms emitted so far; `position()`
    reports it without any arithmetic on N, so it independently
    witnesses what `locate` computes. Block-level consumption (the
    statistics fast path) skips the per-term bookkeeping and leaves the
    position unreported.
    """

    def __init__(self, t: GrowthFn):
        super().__init__(self._make_blocks(t))
        self.growth = t
        self._r = 0
        self._q = 0
        self._p = 0

    @staticmethod
    def _make_blocks(t: GrowthFn):
        def blocks():
            for n in itertools.count(1):
                length = check_magnitude(n**n, f"|C^({n})|")
                check_magnitude(t(n) * length, f"|D^({n})|")
                yield from _d_blocks(n, t(n), length)

        return blocks()

    def position(self) -> Optional[Locator]:
        """Locator of the last term yielded, or None before the first."""
        if self._p == 0:
            return None
        return Locator(self._r, self._q, self._p)

    def __iter__(self) -> Iterator[RationalTerm]:
        t = self.growth
        self._claim()
        for n in itertools.count(1):
            length = check_magnitude(n**n, f"|C^({n})|")
            copies = t(n)
            check_magnitude(copies * length, f"|D^({n})|")
            self._r = n
            cached = ford_digits(n, n) if length <= CACHE_MAX else None
            for q in range(copies):
                self._q = q
                p = 0
                chunks = [cached] if cached is not None else ford_chunks(n, n, DEFAULT_CHUNK)
                for chunk in chunks:
                    for x in chunk:
                        p += 1
                        self._p = p
                        yield (x, n)


def l_stream(t: GrowthFn) -> LStream:
    """The stream L^(t) = D^(1, t), D^(2, t), ..."""
    if not isinstance(t, GrowthFn):
        raise InputError("t must be a GrowthFn")
    return LStream(t)


def locate(N: int, t: GrowthFn) -> Locator:
    """Decompose a 1-based prefix length N into (r, q, p).

    Scans segment sizes t(s) * s**s until the remainder falls inside
    segment r, then splits it into complete copies and the tail.
    """
    if not isinstance(N, int) or N < 1:
        raise InputError(f"N must be an integer >= 1, got {N!r}")
    check_magnitude(N, "N")
    acc = 0
    r = 1
    while True:
        c_len = check_magnitude(r**r, f"|C^({r})|")
        seg = check_magnitude(t(r) * c_len, f"|D^({r})|")
        if acc + seg >= N:
            break
        acc += seg
        r += 1
    rem = N - acc  # 1 <= rem <= t(r) * r**r
    q, p = divmod(rem - 1, r**r)
    return Locator(r, q, p + 1)


def term_at(N: int, t: GrowthFn) -> RationalTerm:
    """The N-th term of L^(t) (1-based), via locate plus a short stream.

    Cost is proportional to p <= r**r: the order-r Ford sequence is
    streamed up to position p.
    """
    loc = locate(N, t)
    r, p = loc.r, loc.p
    seen = 0
    for chunk in ford_chunks(r, r, DEFAULT_CHUNK):
        if seen + len(chunk) >= p:
            return (chunk[p - seen - 1], r)
        seen += len(chunk)
    raise AssertionError("Ford stream ended before position p")


def validate_growth(t: GrowthFn, n_max: int) -> ValidationReport:
    """Check t on 1..n_max: values >= 1 and non-decreasing.

    Also samples the ratios n / t(n). The construction needs them to
    vanish in the limit, which no finite sample can decide, so a ratio
    that fails to strictly decrease anywhere only raises a warning.
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise InputError(f"n_max must be an integer >= 1, got {n_max!r}")
    values = []
    for n in range(1, n_max + 1):
        values.append(t(n))
        if n > 1 and values[-1] < values[-2]:
            return ValidationReport(
                ok=False,
                first_violation=n,
                ratios=tuple(m / v for m, v in enumerate(values, start=1)),
                warning=None,
            )
    ratios = tuple(n / v for n, v in enumerate(values, start=1))
    warning = None
    if any(b >= a for a, b in zip(ratios, ratios[1:])):
        warning = (
            "ratio n/t(n) does not strictly decrease on the sampled range; "
            "the vanishing-ratio hypothesis is not evidenced"
        )
    return ValidationReport(ok=True, first_violation=None, ratios=ratios, warning=warning)


def d_boundaries(t: GrowthFn, limit: int) -> list:
    """Cumulative end positions of D^(1,t), D^(2,t), ... that are <= limit."""
    if limit < 1:
        raise InputError("limit must be >= 1")
    out = []
    total = 0
    for n in itertools.count(1):
        total += t(n) * n**n
        if total > limit:
            return out
        out.append(total)
