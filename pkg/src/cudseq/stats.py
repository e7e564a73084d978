"""Statistical verification engine for term streams.

Implements the measurable side of complete uniform distribution at desk
scale: window counts against boxes (with an exact error-term check for
cyclic C-sequences), Weyl sums (empirical over streams and exact over
cyclic C-sequences via congruence counting), convergence tables,
relative-order statistics, and a grid lower bound on star discrepancy.

Box membership is decided exactly: a term num/den is compared against a
binary64 bound u via integer cross-multiplication of num/den with u's
exact dyadic value, so no window is ever misclassified by rounding.
"""

import itertools
import math
import random
from array import array
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, gcd
from typing import Sequence, Tuple

from . import _pykernels
from ._backend import kernels
from .debruijn import ford_digits
from .errors import CapacityError, InputError, check_magnitude
from .streams import DEFAULT_CHUNK, iter_blocks, take_blocks

# Default seed for reproducible box sampling in verification suites.
DEFAULT_SEED = 123456789

# Per-denominator membership tables are built up to this denominator;
# larger denominators fall back to per-term exact masks.
TABLE_MAX = 1 << 16

# The window-match bitset lives in 64 bits on the compiled backend.
DIM_MAX = 63

# Order statistics allocate k! counters.
PERM_DIM_MAX = 10

# Grid cell guard for the discrepancy estimate.
CELL_GUARD = 1 << 22

# Cyclic counts enumerate n**n windows.
CYCLIC_ORDER_MAX = 7

# Numerator*denominator products beyond this use the big-int kernels.
_I64_SAFE_DEN = 1 << 31


@dataclass(frozen=True)
class Box:
    """A k-dimensional half-open box inside the unit cube.

    bounds[d] = (u_d, v_d) with 0 <= u_d < v_d <= 1; the box is the
    product of the intervals [u_d, v_d).
    """

    bounds: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        if not self.bounds:
            raise InputError("box must have at least one dimension")
        if len(self.bounds) > DIM_MAX:
            raise CapacityError(f"box dimension limited to {DIM_MAX}")
        for u, v in self.bounds:
            if not (0.0 <= u < v <= 1.0):
                raise InputError(f"box bounds must satisfy 0 <= u < v <= 1, got [{u}, {v})")

    @property
    def dim(self) -> int:
        return len(self.bounds)

    @property
    def volume(self) -> float:
        vol = 1.0
        for u, v in self.bounds:
            vol *= v - u
        return vol

    @classmethod
    def parse(cls, spec: str) -> "Box":
        """Parse `u1:v1,u2:v2,...` with decimal bounds."""
        bounds = []
        for part in spec.split(","):
            u_str, sep, v_str = part.partition(":")
            if not sep:
                raise InputError(f"bad box interval {part!r} (expected u:v)")
            try:
                bounds.append((float(u_str), float(v_str)))
            except ValueError:
                raise InputError(f"bad box interval {part!r}") from None
        return cls(tuple(bounds))


@dataclass(frozen=True)
class WindowCount:
    """Windows found inside a box out of the windows examined."""

    nu: int
    n_windows: int

    def __post_init__(self):
        if not 0 <= self.nu <= self.n_windows:
            raise InputError("window count out of range")

    @property
    def ratio(self) -> float:
        return self.nu / self.n_windows


@dataclass(frozen=True)
class OrderStats:
    """Relative-order census of k-term windows.

    counts maps each permutation (the rank pattern of a window with
    pairwise-distinct entries) to its number of occurrences; windows
    containing any equal pair are tallied in tie_count instead.
    """

    k: int
    counts: dict
    tie_count: int
    windows: int

    @property
    def strict_windows(self) -> int:
        return self.windows - self.tie_count

    @property
    def tie_fraction(self) -> float:
        return self.tie_count / self.windows

    def frequencies(self) -> dict:
        """Per-permutation frequency among tie-free windows."""
        strict = self.strict_windows
        if strict == 0:
            return {perm: 0.0 for perm in self.counts}
        return {perm: c / strict for perm, c in self.counts.items()}


@dataclass(frozen=True)
class CyclicWeylSum:
    """Exact Weyl sum over all cyclic k-windows of C^(n).

    multiplicities[r] is the exact number of windows whose scaled dot
    product with ell is congruent to r mod n, so the sum equals
    sum_r multiplicities[r] * exp(2*pi*i*r/n); `value` evaluates that in
    binary64. The sum vanishes structurally when the nonzero residue
    classes are exactly the multiples of g = gcd(ell, n), all equally
    weighted, and there is more than one of them.
    """

    n: int
    ell: Tuple[int, ...]
    gcd: int
    multiplicities: Tuple[int, ...]
    value: complex

    @property
    def condition_met(self) -> bool:
        return self.n > max(len(self.ell), min(abs(l) for l in self.ell))

    @property
    def balanced(self) -> bool:
        nonzero = [r for r, m in enumerate(self.multiplicities) if m]
        if nonzero != list(range(0, self.n, self.gcd)):
            return False
        return len({self.multiplicities[r] for r in nonzero}) == 1

    @property
    def structurally_zero(self) -> bool:
        return self.balanced and self.n // self.gcd > 1


@dataclass(frozen=True)
class ConvergencePoint:
    """One checkpoint row of a convergence table."""

    N: int
    ratio: float
    deviation: float


def _check_window_count(N, k) -> int:
    if not isinstance(N, int) or N < k:
        raise InputError(f"window count N must be an integer >= {k}, got {N!r}")
    return N


def _check_ell(ell) -> Tuple[int, ...]:
    ell = tuple(ell)
    if not ell:
        raise InputError("ell must have at least one entry")
    if len(ell) > DIM_MAX:
        raise CapacityError(f"ell dimension limited to {DIM_MAX}")
    for l in ell:
        if not isinstance(l, int):
            raise InputError(f"ell entries must be integers, got {l!r}")
    if all(l == 0 for l in ell):
        raise InputError("ell must not be the zero vector")
    return ell


def _dim_allows(u: float, v: float, num: int, den: int) -> bool:
    # exact u <= num/den < v via cross multiplication with the dyadic bounds
    up, uq = u.as_integer_ratio()
    vp, vq = v.as_integer_ratio()
    return up * den <= num * uq and num * vq < vp * den


@lru_cache(maxsize=None)
def _digit_table(box: Box, den: int) -> list:
    """Per-numerator membership bitmasks (bit d = inside dimension d)."""
    table = []
    for num in range(den):
        mask = 0
        for d, (u, v) in enumerate(box.bounds):
            if _dim_allows(u, v, num, den):
                mask |= 1 << d
        table.append(mask)
    return table


def _term_mask(box: Box, num: int, den: int) -> int:
    mask = 0
    for d, (u, v) in enumerate(box.bounds):
        if _dim_allows(u, v, num, den):
            mask |= 1 << d
    return mask


def _feed_block(box, k, den, nums, state):
    if den <= TABLE_MAX:
        return kernels.boxcount_block(nums, _digit_table(box, den), k, state)
    masks = [_term_mask(box, x, den) for x in nums]
    return kernels.boxcount_masks(masks, k, state)


def box_count(terms, N: int, box: Box, *, threads: int = 1,
              chunk_size: int = DEFAULT_CHUNK) -> WindowCount:
    """Count the windows among the first N that lie in the box.

    Window i (1-based, i <= N) is the k consecutive terms starting at
    position i, where k = box.dim; the stream must supply N+k-1 terms.
    With threads > 1 the count is evaluated over term spans overlapped
    by k-1 terms and summed, which changes nothing in the result.
    """
    k = box.dim
    _check_window_count(N, k)
    blocks = take_blocks(iter_blocks(terms, chunk_size), N + k - 1)
    if threads > 1:
        nu = _boxcount_parallel(blocks, box, k, threads)
    else:
        nu = 0
        state = 0
        for den, nums in blocks:
            add, state = _feed_block(box, k, den, nums, state)
            nu += add
    return WindowCount(nu, N)


def _boxcount_parallel(blocks, box, k, threads, span_terms=1 << 18):
    span_terms = max(span_terms, k)

    def spans():
        # each span carries the previous k-1 terms to prime the matcher
        tail = []
        cur = []
        size = 0
        for den, nums in blocks:
            cur.append((den, nums))
            size += len(nums)
            if size >= span_terms:
                yield tail, cur
                tail = _tail_pairs(tail, cur, k - 1)
                cur = []
                size = 0
        if cur:
            yield tail, cur

    def count_span(job):
        tail, cur = job
        state = 0
        nu = 0
        if tail:
            masks = [_term_mask(box, x, d) for x, d in tail]
            add, state = kernels.boxcount_masks(masks, k, state)
            nu += add  # always 0: fewer than k terms cannot complete a window
        for den, nums in cur:
            add, state = _feed_block(box, k, den, nums, state)
            nu += add
        return nu

    total = 0
    pending = deque()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for job in spans():
            pending.append(pool.submit(count_span, job))
            while len(pending) >= threads * 2:
                total += pending.popleft().result()
        while pending:
            total += pending.popleft().result()
    return total


def _tail_pairs(prev_tail, cur, count):
    if count <= 0:
        return []
    pairs = []
    for den, nums in reversed(cur):
        for x in reversed(nums):
            pairs.append((x, den))
            if len(pairs) == count:
                pairs.reverse()
                return pairs
    pairs.extend(reversed(prev_tail))
    pairs = pairs[:count]
    pairs.reverse()
    return pairs


def count_integers_in_interval(x, y, n: int):
    """Integers from {0..n-1} lying in [x, y), with the fractional error.

    Returns (count, epsilon) where epsilon = count - (y - x), which
    always lies in (-1, 1). Requires [x, y) inside [0, n).
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be an integer >= 1, got {n!r}")
    if not (0 <= x <= y <= n):
        raise InputError(f"require 0 <= x <= y <= n, got x={x}, y={y}, n={n}")
    count = math.ceil(y) - math.ceil(x)
    return count, float(count - (y - x))


def cyclic_box_count(n: int, box: Box):
    """Exact count of cyclic k-windows of C^(n) inside a box.

    Enumerates all n**n windows of the order-n sequence read cyclically
    and returns (count, epsilon) with the error term normalized so that
    count = n**n * volume + n**(n-1) * (2**k - 1) * epsilon; the
    normalized error always satisfies |epsilon| < 1 when k <= n.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"order must be an integer >= 1, got {n!r}")
    k = box.dim
    if k > n:
        raise InputError(f"window dimension {k} must not exceed the order {n}")
    if n > CYCLIC_ORDER_MAX:
        raise CapacityError(f"cyclic counting limited to order <= {CYCLIC_ORDER_MAX}")
    digits = ford_digits(n, n)
    feed = digits + digits[: k - 1] if k > 1 else digits
    count, _ = _feed_block(box, k, n, feed, 0)
    count = int(count)
    total = n**n
    epsilon = (count - total * box.volume) / (n ** (n - 1) * (2**k - 1))
    return count, epsilon


def weyl_sum(terms, N: int, ell, *, chunk_size: int = DEFAULT_CHUNK) -> complex:
    """Sum of exp(2*pi*i * <ell, window_j>) over the first N windows.

    Windows are k = len(ell) consecutive terms; the stream must supply
    N+k-1 terms. Evaluated in binary64; the normalized magnitude
    |S|/N <= 1 up to rounding slack.
    """
    ell = _check_ell(ell)
    k = len(ell)
    _check_window_count(N, k)
    blocks = take_blocks(iter_blocks(terms, chunk_size), N + k - 1)
    re = 0.0
    im = 0.0
    carry = []
    for den, nums in blocks:
        vals = carry + [x / den for x in nums]
        if len(vals) >= k:
            add_re, add_im = kernels.weyl_windows(vals, ell)
            re += add_re
            im += add_im
            carry = vals[len(vals) - (k - 1):] if k > 1 else []
        else:
            carry = vals
    return complex(re, im)


def congruence_solution_count(ell, r: int, n: int) -> int:
    """Solutions gamma in {0..n-1}**k of <ell, gamma> = r (mod n).

    Counted in closed form: with g = gcd(l_1, ..., l_k, n) there are
    g * n**(k-1) solutions when g divides r, none otherwise.
    """
    ell = _check_ell(ell)
    if not isinstance(n, int) or n < 1:
        raise InputError(f"modulus must be an integer >= 1, got {n!r}")
    if not isinstance(r, int) or not 0 <= r < n:
        raise InputError(f"residue must satisfy 0 <= r < n, got {r!r}")
    g = gcd(n, *(abs(l) for l in ell))
    if r % g:
        return 0
    return g * n ** (len(ell) - 1)


def cyclic_weyl_sum(n: int, ell) -> CyclicWeylSum:
    """Exact Weyl sum over all cyclic k-windows of C^(n).

    Every k-window of digit values occurs exactly n**(n-k) times in the
    cyclic sequence, so the sum reduces to the residue-multiplicity
    table computed from congruence counts; no window enumeration and no
    floating summation is involved until the final evaluation.
    """
    ell = _check_ell(ell)
    k = len(ell)
    if not isinstance(n, int) or n < 1:
        raise InputError(f"order must be an integer >= 1, got {n!r}")
    if k > n:
        raise InputError(f"window dimension {k} must not exceed the order {n}")
    check_magnitude(n**n, f"|C^({n})|")
    g = gcd(n, *(abs(l) for l in ell))
    scale = n ** (n - k)
    mult = tuple(scale * congruence_solution_count(ell, r, n) for r in range(n))
    re = 0.0
    im = 0.0
    for r, m in enumerate(mult):
        if m:
            a = math.tau * r / n
            re += m * math.cos(a)
            im += m * math.sin(a)
    return CyclicWeylSum(n, ell, g, mult, complex(re, im))


def convergence_series(terms, checkpoints: Sequence[int], box: Box, *,
                       chunk_size: int = DEFAULT_CHUNK) -> list:
    """Single-pass window-count ratios at ascending checkpoints.

    For each checkpoint N emits (N, nu_N / N, |nu_N / N - volume|).
    """
    k = box.dim
    checkpoints = [int(c) for c in checkpoints]
    if not checkpoints:
        raise InputError("need at least one checkpoint")
    if checkpoints[0] < k:
        raise InputError(f"checkpoints must be >= window dimension {k}")
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise InputError("checkpoints must be strictly ascending")
    vol = box.volume
    blocks = take_blocks(iter_blocks(terms, chunk_size), checkpoints[-1] + k - 1)
    rows = []
    pending = deque(checkpoints)
    nu = 0
    state = 0
    fed = 0
    for den, nums in blocks:
        while pending and fed + len(nums) >= pending[0] + k - 1:
            split = pending[0] + k - 1 - fed
            add, state = _feed_block(box, k, den, nums[:split], state)
            nu += add
            fed += split
            nums = nums[split:]
            cp = pending.popleft()
            ratio = nu / cp
            rows.append(ConvergencePoint(cp, ratio, abs(ratio - vol)))
        if nums:
            add, state = _feed_block(box, k, den, nums, state)
            nu += add
            fed += len(nums)
    return rows


def _lehmer_index(perm) -> int:
    k = len(perm)
    idx = 0
    f = factorial(k - 1)
    for i in range(k):
        idx += sum(1 for j in range(i + 1, k) if perm[j] < perm[i]) * f
        if i < k - 1:
            f //= k - 1 - i
    return idx


def perm_order_stats(terms, N: int, k: int, *,
                     chunk_size: int = DEFAULT_CHUNK) -> OrderStats:
    """Census of the relative orders of the first N k-term windows.

    Windows whose k entries are pairwise distinct are classified by the
    permutation ranking them; windows with any equal pair only count
    toward tie_count. Comparisons are exact.
    """
    if not isinstance(k, int) or k < 2:
        raise InputError(f"window size must be an integer >= 2, got {k!r}")
    if k > PERM_DIM_MAX:
        raise CapacityError(f"order statistics limited to window size <= {PERM_DIM_MAX}")
    if not isinstance(N, int) or N < 1:
        raise InputError(f"window count N must be an integer >= 1, got {N!r}")
    blocks = take_blocks(iter_blocks(terms, chunk_size), N + k - 1)
    counts = array("q", [0]) * factorial(k)
    ties = 0
    carry_n: list = []
    carry_d: list = []
    for den, nums in blocks:
        ns = carry_n + nums
        ds = carry_d + [den] * len(nums)
        if len(ns) >= k:
            kern = kernels if max(ds) < _I64_SAFE_DEN else _pykernels
            ties += kern.perm_windows(ns, ds, k, counts)
            carry_n = ns[len(ns) - (k - 1):]
            carry_d = ds[len(ds) - (k - 1):]
        else:
            carry_n, carry_d = ns, ds
    counts_map = {
        perm: counts[_lehmer_index(perm)]
        for perm in itertools.permutations(range(k))
    }
    return OrderStats(k, counts_map, ties, N)


def star_discrepancy_estimate(terms, N: int, k: int, grid: int, *,
                              chunk_size: int = DEFAULT_CHUNK) -> float:
    """Grid lower bound on the star discrepancy of the first N windows.

    Maximizes |empirical fraction - volume| over the anchored boxes
    [0, j_1/m) x ... x [0, j_k/m) with 1 <= j_d <= m for m = grid. This
    is a lower bound on the true star discrepancy (which maximizes over
    all anchored boxes).
    """
    if not isinstance(k, int) or k < 1:
        raise InputError(f"window dimension must be an integer >= 1, got {k!r}")
    if not isinstance(grid, int) or grid < 2:
        raise InputError(f"grid resolution must be an integer >= 2, got {grid!r}")
    _check_window_count(N, k)
    cells_total = grid**k
    if cells_total > CELL_GUARD:
        raise CapacityError(f"grid**k limited to {CELL_GUARD}")
    counts = array("q", [0]) * cells_total
    blocks = take_blocks(iter_blocks(terms, chunk_size), N + k - 1)
    carry: list = []
    for den, nums in blocks:
        cells = carry + [x * grid // den for x in nums]
        if len(cells) >= k:
            kernels.cell_windows(cells, k, grid, counts)
            carry = cells[len(cells) - (k - 1):] if k > 1 else []
        else:
            carry = cells
    # prefix sums along each axis: counts[c] becomes #windows with cell <= c
    for d in range(k):
        stride = grid**d
        for idx in range(cells_total):
            if (idx // stride) % grid:
                counts[idx] += counts[idx - stride]
    best = 0.0
    inv_m = 1.0 / grid
    for idx in range(cells_total):
        vol = 1.0
        rest = idx
        for _ in range(k):
            vol *= (rest % grid + 1) * inv_m
            rest //= grid
        dev = abs(counts[idx] / N - vol)
        if dev > best:
            best = dev
    return best


def power_sum_bound(n: int):
    """(sum of i**(i-1) for i = 1..n, 2 * n**(n-1)), both exact.

    The first component never exceeds the second; the margin is used by
    the verification suite.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be an integer >= 1, got {n!r}")
    return sum(i ** (i - 1) for i in range(1, n + 1)), 2 * n ** (n - 1)


def random_boxes(k: int, count: int, seed: int = DEFAULT_SEED) -> list:
    """Reproducible pseudo-random boxes for verification sweeps."""
    if not isinstance(k, int) or k < 1:
        raise InputError(f"dimension must be an integer >= 1, got {k!r}")
    if count < 0:
        raise InputError("count must be >= 0")
    rng = random.Random(seed)
    boxes = []
    for _ in range(count):
        bounds = []
        for _ in range(k):
            a = rng.random()
            b = rng.random()
            while a == b:
                b = rng.random()
            bounds.append((min(a, b), max(a, b)))
        boxes.append(Box(tuple(bounds)))
    return boxes
