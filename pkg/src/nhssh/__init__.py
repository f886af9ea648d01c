"""Gain/loss SSH lattice toolkit: spectra, dynamics and closed-form oracles."""

from .lattice import (
    Boundary,
    LatticeParams,
    apply_antilinear,
    build_hamiltonian,
    symmetry_operator,
    symmetry_residuals,
)
from .oracle import (
    PacketSpec,
    analytic_eigenstate,
    coefficient_lambda,
    dirac_norm_closed_form,
    evolved_state_closed_form,
    overlap_formula,
    packet_coefficients,
    triangle_wave_norm,
)
from .propagate import Trajectory, evolve, expm, propagator
from .specfun import ConvergenceError, SpecialValue, dilog, lerch_phi
from .spectra import (
    ComplexBandError,
    EigensolverError,
    SpectrumReport,
    analytic_dispersion,
    esm_spacing,
    full_spectrum,
    revival_period,
    verify_equal_spacing,
)
from .states import (
    Measurement,
    PacketPairSpec,
    build_initial_state,
    build_pair_state,
    coalescing_state,
    direct_coalescing_overlap,
    fwhm_interval,
    measure,
    shape_distance,
    smoothed_profile,
)
from .analysis import (
    AnalysisError,
    GrowthReport,
    InterferenceReport,
    TranslationReport,
    classify_growth,
    interference_report,
    reflection_symmetry,
    translation_window,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "Boundary",
    "ComplexBandError",
    "ConvergenceError",
    "EigensolverError",
    "GrowthReport",
    "InterferenceReport",
    "LatticeParams",
    "Measurement",
    "PacketPairSpec",
    "PacketSpec",
    "SpecialValue",
    "SpectrumReport",
    "Trajectory",
    "TranslationReport",
    "analytic_dispersion",
    "analytic_eigenstate",
    "apply_antilinear",
    "build_hamiltonian",
    "build_initial_state",
    "build_pair_state",
    "classify_growth",
    "coalescing_state",
    "coefficient_lambda",
    "dilog",
    "dirac_norm_closed_form",
    "direct_coalescing_overlap",
    "esm_spacing",
    "evolve",
    "evolved_state_closed_form",
    "expm",
    "full_spectrum",
    "fwhm_interval",
    "interference_report",
    "lerch_phi",
    "measure",
    "overlap_formula",
    "packet_coefficients",
    "propagator",
    "reflection_symmetry",
    "revival_period",
    "shape_distance",
    "smoothed_profile",
    "symmetry_operator",
    "symmetry_residuals",
    "translation_window",
    "triangle_wave_norm",
    "verify_equal_spacing",
]
