"""rmideal: exact monomial-ideal invariants plus a seeded Monte Carlo harness
for the random model I(n, D, p)."""

__version__ = "0.1.0"

from .errors import (
    ArityError,
    ConfigError,
    GuardExceededError,
    InternalInvariantError,
    NotZeroDimensionalError,
    RmidealError,
    UnitIdealError,
)
from .ideals import (
    UNIT_IDEAL,
    MonomialIdeal,
    UnitIdeal,
    contains,
    divides,
    ideal_from_dict,
    ideal_to_dict,
    krull_dimension,
    minimalize,
    restrict,
)
from .divisors import z_asymptotic, z_count, z_count_bruteforce
from .staircase import (
    BandSpec,
    band_check,
    corner_product,
    count_standard_monomials,
    hilbert_function,
    max_staircase_product,
    staircase_corners,
)
from .pairs import (
    PairCensus,
    StandardPair,
    arithmetic_degree,
    brute_force_standard_pairs,
    degree,
    degree_by_restriction,
    enumerate_standard_pairs,
    hilbert_sum,
    is_admissible,
    is_standard,
    region_L,
)
from .sampling import (
    ModelParams,
    PSpec,
    count_monomials_exact_degree,
    count_monomials_up_to,
    default_thresholds,
    prob_minimal_generator,
    prob_not_in_ideal,
    rank_monomial,
    sample_ideal,
    sample_raw,
    unrank_monomial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
