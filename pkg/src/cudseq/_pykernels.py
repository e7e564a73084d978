"""Pure-Python kernels.

Reference implementations of the hot inner loops. `cudseq._ckernels`
mirrors every function here with identical semantics; `cudseq._backend`
picks whichever is available at import time. Keep the two in lockstep.

Conventions shared by both backends:
  * digit chunks are plain lists of ints,
  * window counting is linear; callers append the first k-1 items for
    cyclic reads and slice the input to N+k-1 terms to bound the count,
  * `state` is the shift-and bitset of partially matched windows (bit c
    set = the last c+1 terms matched dimensions 0..c), so counting can
    be chunked without overlap bookkeeping.
"""

import math

BACKEND_NAME = "python"


def ford_chunks(base, order, chunk_size):
    """Yield the digits of the Ford sequence F^(base, order) in chunks.

    Concatenates, in lexicographic order, every Lyndon word over
    {0..base-1} whose length divides `order` (Duval's successor loop;
    constant amortized work per digit). Emits base**order digits total.
    """
    k = order
    word = [0] * k
    wlen = 1
    bmax = base - 1
    out = []
    while wlen:
        if k % wlen == 0:
            out.extend(word[:wlen])
            if len(out) >= chunk_size:
                yield out
                out = []
        for i in range(wlen, k):
            word[i] = word[i - wlen]
        j = k
        while j and word[j - 1] == bmax:
            j -= 1
        if j == 0:
            break
        word[j - 1] += 1
        wlen = j
    if out:
        yield out


def boxcount_block(nums, table, k, state):
    """Count box windows over one constant-denominator block.

    `table[x]` holds the k-bit per-dimension membership mask of numerator
    value x. Returns (windows completed in this block, new state).
    """
    count = 0
    top = k - 1
    for x in nums:
        state = ((state << 1) | 1) & table[x]
        count += (state >> top) & 1
    return count, state


def boxcount_masks(masks, k, state):
    """Like boxcount_block but over precomputed per-term masks."""
    count = 0
    top = k - 1
    for m in masks:
        state = ((state << 1) | 1) & m
        count += (state >> top) & 1
    return count, state


def weyl_windows(vals, ell):
    """Sum exp(2*pi*i * <ell, window>) over every complete window of vals.

    Returns the (real, imag) pair of the complex sum.
    """
    k = len(ell)
    n = len(vals)
    re = 0.0
    im = 0.0
    tau = math.tau
    cos = math.cos
    sin = math.sin
    if k == 1:
        l0 = ell[0]
        for v in vals:
            a = tau * (l0 * v)
            re += cos(a)
            im += sin(a)
        return re, im
    for i in range(n - k + 1):
        s = 0.0
        for d in range(k):
            s += ell[d] * vals[i + d]
        a = tau * s
        re += cos(a)
        im += sin(a)
    return re, im


def perm_windows(nums, dens, k, counts):
    """Classify every complete window by the relative order of its terms.

    Terms are exact rationals given as parallel numerator/denominator
    lists. Windows whose entries are pairwise distinct increment
    `counts[lehmer_index]`; windows with any tie are only tallied in the
    returned tie count. Comparisons are exact (integer cross products).
    """
    n = len(nums)
    ties = 0
    fact = [1] * k
    for i in range(k - 2, -1, -1):
        fact[i] = fact[i + 1] * (k - 1 - i)
    for i in range(n - k + 1):
        idx = 0
        tie = False
        for a in range(k):
            na = nums[i + a]
            da = dens[i + a]
            c = 0
            for b in range(a + 1, k):
                lhs = nums[i + b] * da
                rhs = na * dens[i + b]
                if lhs == rhs:
                    tie = True
                    break
                if lhs < rhs:
                    c += 1
            if tie:
                break
            idx += c * fact[a]
        if tie:
            ties += 1
        else:
            counts[idx] += 1
    return ties


def cell_windows(cells, k, m, counts):
    """Histogram every complete window of grid cells into flat indices.

    `cells` holds per-term cell coordinates in {0..m-1}; the window
    starting at i maps to sum(cells[i+d] * m**d). Mutates `counts`.
    """
    n = len(cells)
    for i in range(n - k + 1):
        flat = 0
        pw = 1
        for d in range(k):
            flat += cells[i + d] * pw
            pw *= m
        counts[flat] += 1
