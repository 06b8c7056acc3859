"""Exact two-mode N-photon interferometry and Fisher-information tools.

The package simulates photon-counting interferometry in a single
total-photon-number sector: state preparation (dual Fock, Holland
Burnett, NOON, and the uncorrelated shot-noise benchmark), exact beam
splitter and phase-shift transforms, detection fringes and their Fisher
information, click-detector arrays, and seeded Monte Carlo estimation
pipelines.
"""

from .detection import (
    DetectorArrayConfig,
    click_distribution,
    port_click_pmf,
    resolve_probability,
    sixfold_selection_rate,
)
from .estimation import (
    DirectFisherResult,
    ExperimentPlan,
    MleResult,
    direct_fisher_from_data,
    mle_phase,
    simulate_counts,
    snl_comparison,
)
from .fisher import (
    FisherProfile,
    OptimalityReport,
    ScalingRow,
    find_peak,
    fisher_profile,
    full_fisher,
    hb_limit,
    model_fisher_sigma,
    noon_asymptotic,
    noon_single_fringe_max,
    optimality_certificate,
    output_uncertainty_bound,
    scaling_table,
    single_fringe_fisher,
    single_fringe_fisher_model,
)
from .fock import (
    MAX_PHOTONS,
    OutcomePattern,
    PhysicsError,
    TwoModeState,
    basis_state,
    beam_splitter,
    beam_splitter_matrix,
    generator_apply,
    generator_variance,
    inner_product,
    make_state,
    number_difference,
    phase_shift,
)
from .fringes import (
    DEFAULT_FRINGE_PEAK,
    CountRecord,
    FitResult,
    FringeModel,
    affine_from_visibility,
    affine_model,
    apply_model,
    fit_fringe,
    fringe_derivative,
    fringe_derivatives,
    fringe_probabilities,
    fringe_probability,
    fringe_visibility,
    ideal_model,
    model_derivative,
    noon_cosine_model,
    p33_closed_form,
    parity_expectation,
)
from .states import build_state, dual_fock, hb_state, noon_state, snl_state

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_FRINGE_PEAK",
    "MAX_PHOTONS",
    "CountRecord",
    "DetectorArrayConfig",
    "DirectFisherResult",
    "ExperimentPlan",
    "FisherProfile",
    "FitResult",
    "FringeModel",
    "MleResult",
    "OptimalityReport",
    "OutcomePattern",
    "PhysicsError",
    "ScalingRow",
    "TwoModeState",
    "affine_from_visibility",
    "affine_model",
    "apply_model",
    "basis_state",
    "beam_splitter",
    "beam_splitter_matrix",
    "build_state",
    "click_distribution",
    "direct_fisher_from_data",
    "dual_fock",
    "find_peak",
    "fisher_profile",
    "fit_fringe",
    "fringe_derivative",
    "fringe_derivatives",
    "fringe_probabilities",
    "fringe_probability",
    "fringe_visibility",
    "full_fisher",
    "generator_apply",
    "generator_variance",
    "hb_limit",
    "hb_state",
    "ideal_model",
    "inner_product",
    "make_state",
    "mle_phase",
    "model_derivative",
    "model_fisher_sigma",
    "noon_asymptotic",
    "noon_cosine_model",
    "noon_single_fringe_max",
    "noon_state",
    "number_difference",
    "optimality_certificate",
    "output_uncertainty_bound",
    "p33_closed_form",
    "parity_expectation",
    "phase_shift",
    "port_click_pmf",
    "resolve_probability",
    "scaling_table",
    "simulate_counts",
    "single_fringe_fisher",
    "single_fringe_fisher_model",
    "sixfold_selection_rate",
    "snl_comparison",
    "snl_state",
]
