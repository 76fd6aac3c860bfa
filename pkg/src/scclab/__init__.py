"""Simple closed curves on the four-punctured sphere: exact word
combinatorics, Farey calculus, lattice tilings, subword-redundancy
verification, and hyperbolic representation diagnostics."""

from .farey import (
    ContinuedFraction,
    FareyError,
    INFINITY,
    Rational,
    are_neighbors,
    cf_expand,
    cf_value,
    convergents,
    enumerate_slopes,
    farey_diff,
    farey_sum,
)
from .words import (
    Block,
    LevelWords,
    SimpleCurve,
    SpecialLengths,
    WordError,
    block_decompose,
    canonical_form,
    curve_for_slope,
    cyclic_reduce,
    inverse_word,
    is_simple,
    level_words,
    mcg_slope_action,
    parse_word,
    project_f2,
    reduce_word,
    simple_family,
    slope_to_word,
    special_lengths,
    word_str,
    word_to_slope,
)

__version__ = "0.1.0"
