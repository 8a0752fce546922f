"""Entropy-difference bounds for discrete random variables.

The library computes rigorous upper bounds on |H(X) - H(Y)| from the local
and total-variation distances between pmfs, constructs and samples the
maximal coupling that underlies those bounds, extends them to countably
infinite alphabets via certified truncation, and applies the machinery to
Poisson approximation of Bernoulli sums through Stein-method distance
envelopes.
"""

from .core_dist import (
    BinomialLaw,
    FiniteDistribution,
    PoissonLaw,
    bernoulli_sum_pmf,
    bessel_i0_scaled,
    binary_entropy,
    binomial_entropy,
    entropy,
    poisson_entropy,
    poisson_log_pmf,
    relative_entropy,
    unify_support,
)
from .countable_bounds import (
    CountablePmf,
    TruncationBoundInputs,
    tail_entropy_oracle,
    truncate_countable,
    truncation_gap_bound,
    truncation_gap_bound_tv_only,
)
from .coupling import (
    CouplingParts,
    build_maximal_coupling,
    coupling_equal_probability,
    map_estimator_j,
    sample_coupling,
    sample_coupling_many,
)
from .distances import (
    DistancePair,
    distance_pair,
    local_distance,
    total_variation,
    tv_event_supremum_oracle,
)
from .errors import (
    ApplicabilityError,
    CapabilityError,
    ConstraintError,
    DomainError,
    EntroboundError,
    InternalCheckError,
    ValidationError,
)
from .finite_bounds import (
    FiniteBoundReport,
    NearUniformSpec,
    bounded_ratio_condition,
    disjoint_support_feasible,
    disjoint_support_gap_argmax,
    disjoint_support_gap_max,
    disjoint_support_gap_upper,
    entropy_gap_report,
    envelope_gap_bound,
    feasible_point_value,
    local_gap_bound,
    mutual_information_bound,
    near_uniform_entropy_lower_bound,
    near_uniform_pmf,
    small_ratio_gap_bound,
    tv_gap_bound,
    tv_local_gap_bound,
    tv_local_gap_bound_refined,
)
from .poisson_stein import (
    PoissonCountable,
    PoissonGapReport,
    SteinDiagnostics,
    SteinEnvelope,
    choose_truncation_size,
    poisson_binomial_gap_bounds,
    poisson_tail_chernoff,
    poisson_tail_chernoff_log,
    poisson_tail_entropy_bound,
    poisson_tail_entropy_log_bound,
    stein_envelope,
    stein_envelope_vs_exact,
    stein_local_upper,
    stein_ratio_asymptote,
    stein_tv_lower,
    stein_tv_upper,
)

__version__ = "0.1.0"

__all__ = [
    "ApplicabilityError",
    "BinomialLaw",
    "CapabilityError",
    "ConstraintError",
    "CountablePmf",
    "CouplingParts",
    "DistancePair",
    "DomainError",
    "EntroboundError",
    "FiniteBoundReport",
    "FiniteDistribution",
    "InternalCheckError",
    "NearUniformSpec",
    "PoissonCountable",
    "PoissonGapReport",
    "PoissonLaw",
    "SteinDiagnostics",
    "SteinEnvelope",
    "TruncationBoundInputs",
    "ValidationError",
    "bernoulli_sum_pmf",
    "bessel_i0_scaled",
    "binary_entropy",
    "binomial_entropy",
    "bounded_ratio_condition",
    "build_maximal_coupling",
    "choose_truncation_size",
    "coupling_equal_probability",
    "disjoint_support_feasible",
    "disjoint_support_gap_argmax",
    "disjoint_support_gap_max",
    "disjoint_support_gap_upper",
    "distance_pair",
    "entropy",
    "entropy_gap_report",
    "envelope_gap_bound",
    "feasible_point_value",
    "local_distance",
    "local_gap_bound",
    "map_estimator_j",
    "mutual_information_bound",
    "near_uniform_entropy_lower_bound",
    "near_uniform_pmf",
    "poisson_binomial_gap_bounds",
    "poisson_entropy",
    "poisson_log_pmf",
    "poisson_tail_chernoff",
    "poisson_tail_chernoff_log",
    "poisson_tail_entropy_bound",
    "poisson_tail_entropy_log_bound",
    "relative_entropy",
    "sample_coupling",
    "sample_coupling_many",
    "small_ratio_gap_bound",
    "stein_envelope",
    "stein_envelope_vs_exact",
    "stein_local_upper",
    "stein_ratio_asymptote",
    "stein_tv_lower",
    "stein_tv_upper",
    "tail_entropy_oracle",
    "total_variation",
    "truncate_countable",
    "truncation_gap_bound",
    "truncation_gap_bound_tv_only",
    "tv_event_supremum_oracle",
    "tv_gap_bound",
    "tv_local_gap_bound",
    "tv_local_gap_bound_refined",
    "unify_support",
]
