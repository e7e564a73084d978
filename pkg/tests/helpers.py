"""Shared reference data and independent oracles for the test suite."""

from fractions import Fraction

# Known Ford sequences (lexicographically least de Bruijn sequences).
F21 = [0, 1]
F22 = [0, 0, 1, 1]
F23 = [0, 0, 0, 1, 0, 1, 1, 1]
F23_OTHER = [0, 0, 0, 1, 1, 1, 0, 1]  # the only other binary order-3 sequence
F42 = [0, 0, 1, 0, 2, 0, 3, 1, 1, 2, 1, 3, 2, 2, 3, 3]
F33 = [0, 0, 0, 1, 0, 0, 2, 0, 1, 1, 0, 1, 2, 0, 2, 1, 0, 2, 2, 1, 1, 1, 2, 1, 2, 2, 2]

# A^(2) = F^(4,2) / 4 and C^(3) = F^(3,3) / 3 as (num, den) terms.
A2_TERMS = [(d, 4) for d in F42]
C3_TERMS = [(d, 3) for d in F33]

# End of D^(4, sq) and D^(6, sq) within L^(sq).
N4_SQ = sum(s * s * s**s for s in range(1, 5))  # 4356
N6_SQ = sum(s * s * s**s for s in range(1, 7))  # 1762097


def cyclic_terms(terms, k):
    """Extend a finite term list so linear windows cover the cyclic reads."""
    terms = list(terms)
    return terms + terms[: k - 1] if k > 1 else terms


def window_in_box(window, bounds):
    """Exact box membership for a window of (num, den) terms."""
    for (num, den), (u, v) in zip(window, bounds):
        value = Fraction(num, den)
        if not (Fraction(*u.as_integer_ratio()) <= value < Fraction(*v.as_integer_ratio())):
            return False
    return True


def brute_force_box_count(terms, n_windows, bounds):
    """Window-by-window box count with Fraction arithmetic."""
    terms = list(terms)
    k = len(bounds)
    count = 0
    for i in range(n_windows):
        if window_in_box(terms[i : i + k], bounds):
            count += 1
    return count


def brute_force_cyclic_box_count(digits, den, bounds):
    """Count cyclic windows of a digit sequence inside a box, exactly."""
    k = len(bounds)
    terms = cyclic_terms([(d, den) for d in digits], k)
    return brute_force_box_count(terms, len(digits), bounds)
