# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; mirrors cudseq._pykernels function for function.

Callers guarantee: k <= 63 (the shift-and state lives in a uint64),
digit/numerator values fit in int64 and, on comparison paths, products
num*den fit in int64 (the drivers route larger inputs to the pure
kernels instead).
"""

from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc

import math

BACKEND_NAME = "cython"

cdef double TAU = math.tau


cdef class _FordChunks:
    cdef long base, k, chunk
    cdef long *word
    cdef long wlen
    cdef bint done

    def __cinit__(self, long base, long order, long chunk_size):
        self.base = base
        self.k = order
        self.chunk = chunk_size
        self.word = <long *> malloc(order * sizeof(long))
        if self.word == NULL:
            raise MemoryError()
        cdef long i
        for i in range(order):
            self.word[i] = 0
        self.wlen = 1
        self.done = False

    def __dealloc__(self):
        if self.word != NULL:
            free(self.word)

    def __iter__(self):
        return self

    def __next__(self):
        if self.done:
            raise StopIteration
        cdef list out = []
        cdef long i, j
        cdef long k = self.k
        cdef long bmax = self.base - 1
        cdef long wlen = self.wlen
        while wlen:
            if k % wlen == 0:
                for i in range(wlen):
                    out.append(self.word[i])
                if len(out) >= self.chunk:
                    break
            for i in range(wlen, k):
                self.word[i] = self.word[i - wlen]
            j = k
            while j and self.word[j - 1] == bmax:
                j -= 1
            if j == 0:
                wlen = 0
                break
            self.word[j - 1] += 1
            wlen = j
        if wlen:
            # leave the successor for the next chunk
            for i in range(wlen, k):
                self.word[i] = self.word[i - wlen]
            j = k
            while j and self.word[j - 1] == bmax:
                j -= 1
            if j == 0:
                wlen = 0
            else:
                self.word[j - 1] += 1
                wlen = j
        self.wlen = wlen
        if wlen == 0:
            self.done = True
            if not out:
                raise StopIteration
        return out


def ford_chunks(base, order, chunk_size):
    """Yield the digits of the Ford sequence F^(base, order) in chunks."""
    return _FordChunks(base, order, chunk_size)


def boxcount_block(list nums, list table, long k, state):
    """Count box windows over one constant-denominator block."""
    cdef unsigned long long st = state
    cdef unsigned long long cnt = 0
    cdef long top = k - 1
    cdef Py_ssize_t n = len(nums)
    cdef Py_ssize_t tn = len(table)
    cdef Py_ssize_t i
    cdef long x
    cdef unsigned long long *tbl = <unsigned long long *> malloc(tn * sizeof(unsigned long long))
    if tbl == NULL:
        raise MemoryError()
    try:
        for i in range(tn):
            tbl[i] = table[i]
        for i in range(n):
            x = nums[i]
            st = ((st << 1) | 1) & tbl[x]
            cnt += (st >> top) & 1
    finally:
        free(tbl)
    return cnt, st


def boxcount_masks(list masks, long k, state):
    """Like boxcount_block but over precomputed per-term masks."""
    cdef unsigned long long st = state
    cdef unsigned long long cnt = 0
    cdef long top = k - 1
    cdef Py_ssize_t i
    cdef unsigned long long m
    for i in range(len(masks)):
        m = masks[i]
        st = ((st << 1) | 1) & m
        cnt += (st >> top) & 1
    return cnt, st


def weyl_windows(list vals, ell):
    """Sum exp(2*pi*i * <ell, window>) over every complete window of vals."""
    cdef long k = len(ell)
    cdef Py_ssize_t n = len(vals)
    cdef double re = 0.0, im = 0.0
    cdef double s, a
    cdef Py_ssize_t i
    cdef long d
    cdef double *v = NULL
    cdef double *lv = NULL
    if n - k + 1 <= 0:
        return re, im
    v = <double *> malloc(n * sizeof(double))
    lv = <double *> malloc(k * sizeof(double))
    if v == NULL or lv == NULL:
        free(v)
        free(lv)
        raise MemoryError()
    try:
        for i in range(n):
            v[i] = vals[i]
        for d in range(k):
            lv[d] = ell[d]
        for i in range(n - k + 1):
            s = 0.0
            for d in range(k):
                s += lv[d] * v[i + d]
            a = TAU * s
            re += cos(a)
            im += sin(a)
    finally:
        free(v)
        free(lv)
    return re, im


def perm_windows(list nums, list dens, long k, counts):
    """Classify every complete window by the relative order of its terms."""
    cdef Py_ssize_t n = len(nums)
    cdef long long ties = 0
    cdef long fact[64]
    cdef long a, b, c
    cdef Py_ssize_t i
    cdef long long na, da, lhs, rhs
    cdef long idx
    cdef bint tie
    cdef long long *nv = NULL
    cdef long long *dv = NULL
    if n == 0:
        return 0
    fact[k - 1] = 1
    for a in range(k - 2, -1, -1):
        fact[a] = fact[a + 1] * (k - 1 - a)
    nv = <long long *> malloc(n * sizeof(long long))
    dv = <long long *> malloc(n * sizeof(long long))
    if nv == NULL or dv == NULL:
        free(nv)
        free(dv)
        raise MemoryError()
    try:
        for i in range(n):
            nv[i] = nums[i]
            dv[i] = dens[i]
        for i in range(n - k + 1):
            idx = 0
            tie = False
            for a in range(k):
                na = nv[i + a]
                da = dv[i + a]
                c = 0
                for b in range(a + 1, k):
                    lhs = nv[i + b] * da
                    rhs = na * dv[i + b]
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
    finally:
        free(nv)
        free(dv)
    return ties


def cell_windows(list cells, long k, long m, counts):
    """Histogram every complete window of grid cells into flat indices."""
    cdef Py_ssize_t n = len(cells)
    cdef Py_ssize_t i
    cdef long d
    cdef long long flat, pw
    cdef long long *cv = NULL
    if n == 0:
        return
    cv = <long long *> malloc(n * sizeof(long long))
    if cv == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            cv[i] = cells[i]
        for i in range(n - k + 1):
            flat = 0
            pw = 1
            for d in range(k):
                flat += cv[i + d] * pw
                pw *= m
            counts[flat] += 1
    finally:
        free(cv)
