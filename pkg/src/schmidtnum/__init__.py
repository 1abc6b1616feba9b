"""Schmidt-number diagnostics for bipartite quantum states.

Exact robustness formulas and Schmidt-robustness bounds for pure states,
canonical and filtered Schmidt witnesses, twirl-verified constructions of
Schmidt-number-n states, a partial-transpose distillability screen, and a
numerical optimizer for witness-based lower bounds on the random Schmidt
robustness.
"""
from .errors import NumericsError, ValidationError
from .linalg import (
    BipartiteOperator,
    hermitian_eigensystem,
    is_psd,
    kron,
    partial_trace,
    partial_transpose,
)
from .states import (
    PureState,
    haar_unitary,
    isotropic,
    isotropic_schmidt_number,
    local_filter,
    max_entangled,
    random_pure_state,
    rho_g,
    schmidt_decompose,
    subset_mixture,
    z_operator,
)
from .witnesses import (
    Witness,
    canonical_witness,
    diag_filtered_witness,
    filter_witness,
    normalized_witness_value_on_pure,
    witness_value,
)
from .robustness import (
    BoundReport,
    conjectured_ball_radius,
    gen_schmidt_bounds,
    gen_schmidt_robustness_maxent,
    random_robustness_pure,
    random_schmidt_robustness_maxent,
    random_schmidt_upper,
    random_schmidt_upper_weak,
    robustness_pure,
)
from .twirl import (
    TwirlVerification,
    phase_mixing_pipeline,
    qft_matrix,
    uu_star_conjugate,
    verify_construction,
)
from .distill import (
    DistillCertificate,
    distillability_check,
    example_state,
    npt_spectrum,
    reduction_criterion,
)
from .optimizer import (
    OptimizationResult,
    OptimizerConfig,
    maximize_rrn_lower_bound,
    reference_fit,
    rrn_objective,
    sweep_leading_coefficient,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteOperator",
    "BoundReport",
    "DistillCertificate",
    "NumericsError",
    "OptimizationResult",
    "OptimizerConfig",
    "PureState",
    "TwirlVerification",
    "ValidationError",
    "Witness",
    "canonical_witness",
    "conjectured_ball_radius",
    "diag_filtered_witness",
    "distillability_check",
    "example_state",
    "filter_witness",
    "gen_schmidt_bounds",
    "gen_schmidt_robustness_maxent",
    "haar_unitary",
    "hermitian_eigensystem",
    "is_psd",
    "isotropic",
    "isotropic_schmidt_number",
    "kron",
    "local_filter",
    "max_entangled",
    "maximize_rrn_lower_bound",
    "normalized_witness_value_on_pure",
    "npt_spectrum",
    "partial_trace",
    "partial_transpose",
    "phase_mixing_pipeline",
    "qft_matrix",
    "random_pure_state",
    "random_robustness_pure",
    "random_schmidt_robustness_maxent",
    "random_schmidt_upper",
    "random_schmidt_upper_weak",
    "reduction_criterion",
    "reference_fit",
    "rho_g",
    "robustness_pure",
    "rrn_objective",
    "schmidt_decompose",
    "subset_mixture",
    "sweep_leading_coefficient",
    "uu_star_conjugate",
    "verify_construction",
    "witness_value",
    "z_operator",
]
