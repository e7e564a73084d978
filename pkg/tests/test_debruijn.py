import random

import pytest

from cudseq import (
    CapacityError,
    DigitSeq,
    InputError,
    best_count,
    enumerate_debruijn,
    ford_chunks,
    ford_digits,
    ford_digitseq,
    ford_stream,
    is_debruijn,
    word_occurrences,
)
from helpers import F21, F22, F23, F23_OTHER, F33, F42


def test_ford_known_sequences():
    assert ford_digits(2, 3) == F23
    assert ford_digits(4, 2) == F42
    assert ford_digits(3, 3) == F33
    assert ford_digits(2, 1) == F21
    assert ford_digits(2, 2) == F22
    assert ford_digits(1, 1) == [0]


def test_ford_degenerate_alphabet():
    # a single-symbol alphabet gives the single-digit sequence for any order
    assert ford_digits(1, 4) == [0]


@pytest.mark.parametrize("base", [2, 3, 4])
@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_ford_shape(base, order):
    digits = ford_digits(base, order)
    assert len(digits) == base**order
    assert all(0 <= d < base for d in digits)
    assert digits[:order] == [0] * order
    assert digits[-order:] == [base - 1] * order


def test_ford_chunking_is_invisible():
    whole = ford_digits(3, 4)
    for chunk_size in (1, 2, 7, 81, 1000):
        rebuilt = [d for chunk in ford_chunks(3, 4, chunk_size) for d in chunk]
        assert rebuilt == whole


def test_ford_stream_matches_digits():
    assert list(ford_stream(5, 3)) == ford_digits(5, 3)


def test_ford_capacity():
    with pytest.raises(CapacityError):
        next(ford_stream(2, 130))


def test_ford_validation():
    with pytest.raises(InputError):
        ford_digits(0, 3)
    with pytest.raises(InputError):
        ford_digits(2, 0)


def test_digitseq_validation():
    with pytest.raises(InputError):
        DigitSeq(2, (0, 2))
    with pytest.raises(InputError):
        DigitSeq(2, (0, 0.5))


def test_is_debruijn_known():
    assert is_debruijn(DigitSeq(2, tuple(F23)), 3)
    assert is_debruijn(DigitSeq(2, tuple(F23_OTHER)), 3)
    assert not is_debruijn(DigitSeq(2, (0, 1, 0, 1)), 2)  # word (0,0) missing
    assert not is_debruijn(DigitSeq(2, tuple(F23)), 2)  # wrong length for order
    assert is_debruijn(DigitSeq(1, (0,)), 1)


@pytest.mark.parametrize("base", [2, 3, 4])
@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_ford_is_debruijn(base, order):
    assert is_debruijn(ford_digitseq(base, order), order)


def test_word_occurrences_known():
    assert word_occurrences(DigitSeq(3, tuple(F33)), DigitSeq(3, (0,))) == 9
    assert word_occurrences(DigitSeq(2, tuple(F23)), DigitSeq(2, (1, 0, 0))) == 1
    assert word_occurrences(DigitSeq(4, tuple(F42)), DigitSeq(4, (3, 3))) == 1


def test_word_occurrences_brute_force():
    rng = random.Random(7)
    seq = DigitSeq(3, tuple(rng.randrange(3) for _ in range(40)))
    for m in (1, 2, 3):
        for _ in range(20):
            word = tuple(rng.randrange(3) for _ in range(m))
            expected = sum(
                all(seq.digits[(i + j) % 40] == word[j] for j in range(m))
                for i in range(40)
            )
            assert word_occurrences(seq, DigitSeq(3, word)) == expected


def test_word_occurrences_errors():
    with pytest.raises(InputError):
        word_occurrences(DigitSeq(3, tuple(F33)), DigitSeq(2, (0,)))
    with pytest.raises(InputError):
        word_occurrences(DigitSeq(2, (0, 1)), DigitSeq(2, (0, 1, 1)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_word_occurs_uniformly(n):
    # each k-word occurs exactly n**(n-k) times among the cyclic windows
    seq = ford_digitseq(n, n)
    doubled = seq.digits + seq.digits
    for k in range(1, n + 1):
        from collections import Counter

        counts = Counter(doubled[i : i + k] for i in range(len(seq)))
        assert len(counts) == n**k
        assert set(counts.values()) == {n ** (n - k)}


def test_best_count_values():
    # (b!)**(b**(k-1)) / b**k evaluated by hand
    assert best_count(2, 3) == 2
    assert best_count(2, 2) == 1
    assert best_count(3, 2) == 24
    assert best_count(2, 1) == 1
    assert best_count(3, 1) == 2
    with pytest.raises(InputError):
        best_count(1, 1)


def test_enumerate_debruijn_known():
    assert [s.digits for s in enumerate_debruijn(2, 3)] == [
        tuple(F23),
        tuple(F23_OTHER),
    ]
    assert [s.digits for s in enumerate_debruijn(2, 2)] == [tuple(F22)]
    assert [s.digits for s in enumerate_debruijn(2, 1)] == [(0, 1)]


@pytest.mark.parametrize("base,order", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)])
def test_enumerate_debruijn_properties(base, order):
    found = enumerate_debruijn(base, order)
    assert len(found) == best_count(base, order)
    assert found == sorted(found, key=lambda s: s.digits)
    assert found[0].digits == tuple(ford_digits(base, order))
    for seq in found:
        assert is_debruijn(seq, order)
        # canonical: no rotation is lexicographically smaller
        digits = seq.digits
        assert all(
            digits <= digits[i:] + digits[:i] for i in range(1, len(digits))
        )


def test_enumerate_guard():
    with pytest.raises(CapacityError):
        enumerate_debruijn(2, 4)
    with pytest.raises(InputError):
        enumerate_debruijn(1, 3)
