"""Completely uniformly distributed sequences from de Bruijn sequences.

Generators for Knuth's sequence K and the linear-alphabet stream L^(t),
built on Ford sequences, plus a statistical engine that checks exact
window-count and Weyl-sum properties and the asymptotic distribution
claims at desk scale.

Hot kernels run on a compiled extension when available; `BACKEND`
reports which implementation is active ("cython" or "python").
"""

from ._backend import BACKEND
from .cud import (
    GrowthFn,
    Locator,
    ValidationReport,
    c_sequence,
    d_boundaries,
    d_sequence,
    l_stream,
    locate,
    term_at,
    validate_growth,
)
from .debruijn import (
    DigitSeq,
    best_count,
    enumerate_debruijn,
    ford_chunks,
    ford_digits,
    ford_digitseq,
    ford_stream,
    is_debruijn,
    word_occurrences,
)
from .errors import (
    CapacityError,
    CudseqError,
    InputError,
    MAX_MAGNITUDE,
    ShortStreamError,
)
from .knuth import SegmentSizes, a_sequence, b_boundaries, b_sequence, k_stream, segment_sizes
from .stats import (
    Box,
    ConvergencePoint,
    CyclicWeylSum,
    DEFAULT_SEED,
    OrderStats,
    WindowCount,
    box_count,
    congruence_solution_count,
    convergence_series,
    count_integers_in_interval,
    cyclic_box_count,
    cyclic_weyl_sum,
    perm_order_stats,
    power_sum_bound,
    random_boxes,
    star_discrepancy_estimate,
    weyl_sum,
)
from .streams import RationalTerm, TermStream

__version__ = "0.1.0"
