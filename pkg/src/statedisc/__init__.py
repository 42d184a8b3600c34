"""Explicit unitary + POVM constructions for quantum state discrimination.

Small-dimension (<= 8) toolkit: build discrimination schemes as concrete
(ensemble, coupling unitary, labeled POVM, closed-form success) bundles,
verify them through an independent measurement pipeline, compare mixed
schemes against the best fully unambiguous alternatives, and reproduce
every number by seeded Monte-Carlo simulation.
"""
from .analysis import (
    ComparisonRecord,
    OptimizeResult,
    left_classicality_check,
    max_unambiguous_symmetric_grid,
    optimize_unambiguous_special,
    right_classicality_check,
    simplex_grid,
    theorem21_bound,
    theorem21_check,
    theorem31_check,
)
from .errors import (
    AmplitudeOutOfRangeError,
    DimensionMismatchError,
    DiscriminationError,
    EmptyGridError,
    GammaOutOfRangeError,
    GramMismatchError,
    GramNotPsdError,
    HypothesisViolatedError,
    IndexOutOfRangeError,
    InfeasibleAmplitudesError,
    InvalidGammaError,
    InvariantViolationError,
    LabelMismatchError,
    NotHermitianError,
    NotPsdError,
    NotUnambiguousError,
    OverlapConstraintViolatedError,
    ParamOutOfRangeError,
    ZeroProbabilityOutcomeError,
)
from .linalg import (
    commutator,
    dag,
    frobenius,
    hermitian_eig,
    isometry_completion,
    kron,
    principal_sqrt,
    psd_cholesky,
)
from .measurement import (
    OutcomeLabel,
    Povm,
    bayes_posterior,
    confusion_matrix,
    outcome_probabilities,
    post_measurement_state,
    success_ambiguous,
    success_unambiguous,
    unambiguity_check,
)
from .montecarlo import (
    SimResult,
    SkippedPoint,
    SweepResult,
    brute_force_success,
    simulate,
    sweep,
)
from .schemes import (
    MixedGeneralParams,
    MixedSpecialParams,
    RraParams,
    Scheme,
    SeparableDecomposition,
    UnambiguousSpecialParams,
    XuResult,
    ZeroAuxParams,
    build_mixed_general,
    build_mixed_special,
    build_rra,
    build_unambiguous_special,
    build_zero_aux,
    coupled_ensemble,
    coupled_states,
    scheme_confusion,
    separable_decomposition,
    xu_max_unambiguous,
    zero_aux_posterior,
)
from .states import (
    DensityMatrix,
    Ensemble,
    GramSpec,
    Ket,
    basis_ket,
    ensemble_density,
    extend_with_ancilla,
    inner,
    states_from_gram,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeOutOfRangeError",
    "ComparisonRecord",
    "DensityMatrix",
    "DimensionMismatchError",
    "DiscriminationError",
    "EmptyGridError",
    "Ensemble",
    "GammaOutOfRangeError",
    "GramMismatchError",
    "GramNotPsdError",
    "GramSpec",
    "HypothesisViolatedError",
    "IndexOutOfRangeError",
    "InfeasibleAmplitudesError",
    "InvalidGammaError",
    "InvariantViolationError",
    "Ket",
    "LabelMismatchError",
    "MixedGeneralParams",
    "MixedSpecialParams",
    "NotHermitianError",
    "NotPsdError",
    "NotUnambiguousError",
    "OptimizeResult",
    "OutcomeLabel",
    "OverlapConstraintViolatedError",
    "ParamOutOfRangeError",
    "Povm",
    "RraParams",
    "Scheme",
    "SeparableDecomposition",
    "SimResult",
    "SkippedPoint",
    "SweepResult",
    "UnambiguousSpecialParams",
    "XuResult",
    "ZeroAuxParams",
    "ZeroProbabilityOutcomeError",
    "basis_ket",
    "bayes_posterior",
    "brute_force_success",
    "build_mixed_general",
    "build_mixed_special",
    "build_rra",
    "build_unambiguous_special",
    "build_zero_aux",
    "commutator",
    "confusion_matrix",
    "coupled_ensemble",
    "coupled_states",
    "dag",
    "ensemble_density",
    "extend_with_ancilla",
    "frobenius",
    "hermitian_eig",
    "inner",
    "isometry_completion",
    "kron",
    "left_classicality_check",
    "max_unambiguous_symmetric_grid",
    "optimize_unambiguous_special",
    "outcome_probabilities",
    "post_measurement_state",
    "principal_sqrt",
    "psd_cholesky",
    "right_classicality_check",
    "scheme_confusion",
    "separable_decomposition",
    "simplex_grid",
    "simulate",
    "states_from_gram",
    "success_ambiguous",
    "success_unambiguous",
    "sweep",
    "theorem21_bound",
    "theorem21_check",
    "theorem31_check",
    "unambiguity_check",
    "xu_max_unambiguous",
    "zero_aux_posterior",
]
