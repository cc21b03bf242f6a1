"""Exact computations of real solutions to Schubert problems on flag manifolds,
with flags osculating the rational normal curve."""

from .combinatorics import (
    DescentData, FlagType, Necklace, Permutation, SchubertData, ai_bruhat_covers, descent_data,
    enumerate_necklaces, enumerate_Wa, flag_dimension, is_monotone, length, necklace_canonical,
    pieri_degree, pieri_lambda, rank_function, special_condition, validate_schubert_data,
)
from .harness import (
    ExperimentConfig, FrequencyTable, assign_by_necklace, report, run_experiment, sample_points,
)
from .polynomials import MultiPoly, det_poly
from .schubert import (
    Instance, build_instance, condition_set, coordinate_pattern, membership_check,
    osculating_matrix,
)
from .solver import (
    GroebnerBasis, SolveResult, Status, eliminant, groebner, quotient_dimension, solve_instance,
    standard_monomials,
)
from .univariate import UniPoly, squarefree_part, sturm_count

__version__ = "0.1.0"
