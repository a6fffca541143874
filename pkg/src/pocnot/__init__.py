"""Two-spin selective-pulse c-NOT modelling: Hamiltonians, propagators, bounds, spectra."""
from .operators import (
    CNOT,
    IDENTITY,
    Tolerances,
    basis_op,
    commutator,
    dagger,
    decompose,
    expm_hermitian,
    ga_norm,
    is_hermitian,
    is_unitary,
    phase_insensitive_distance,
    recompose,
    rotor,
    scalar_part,
)
from .hamiltonians import (
    EffectiveField,
    ReducedParams,
    RfPulse,
    SpinSystem,
    drop_offres_term,
    effective_fields,
    frame_generator,
    lab_hamiltonian,
    perturbed_hamiltonian,
    rotating_frame_hamiltonian,
    rotation_time,
)
from .gates import (
    CnotVerdict,
    PhaseDiag,
    cnot_sequence_onres,
    conjugation_defect,
    exact_cnot_params,
    onres_split_propagator,
    ontrn_defect_bound,
    ontrn_defect_closed_form,
    ontrn_phase_factorization,
    predicted_phases_onres,
    transition_propagator,
    verify_cnot,
)
from .diag import (
    DiagFactorization,
    char_eigenvalues,
    diag_angles,
    diag_transform,
    factored_propagator,
)
from .bounds import (
    BoundReport,
    commutator_power,
    derivative_term_bounds,
    f_alpha,
    g_c2,
    ontrn_offres_bound,
    sinch_directional_derivative,
)
from .observables import ExperimentPreset, TimeSeries, equilibrium_state, simulate_series
from .spectra import (
    Acquisition,
    FitResult,
    SpectrumModel,
    fit_components,
    synth_fid,
    synth_window,
)

__version__ = "0.1.0"

__all__ = [
    "Acquisition",
    "BoundReport",
    "CNOT",
    "CnotVerdict",
    "DiagFactorization",
    "EffectiveField",
    "ExperimentPreset",
    "FitResult",
    "IDENTITY",
    "PhaseDiag",
    "ReducedParams",
    "RfPulse",
    "SpectrumModel",
    "SpinSystem",
    "TimeSeries",
    "Tolerances",
    "basis_op",
    "char_eigenvalues",
    "cnot_sequence_onres",
    "commutator",
    "commutator_power",
    "conjugation_defect",
    "dagger",
    "decompose",
    "derivative_term_bounds",
    "diag_angles",
    "diag_transform",
    "drop_offres_term",
    "effective_fields",
    "equilibrium_state",
    "exact_cnot_params",
    "expm_hermitian",
    "f_alpha",
    "factored_propagator",
    "fit_components",
    "frame_generator",
    "g_c2",
    "ga_norm",
    "is_hermitian",
    "is_unitary",
    "lab_hamiltonian",
    "onres_split_propagator",
    "ontrn_defect_bound",
    "ontrn_defect_closed_form",
    "ontrn_offres_bound",
    "ontrn_phase_factorization",
    "perturbed_hamiltonian",
    "phase_insensitive_distance",
    "predicted_phases_onres",
    "recompose",
    "rotating_frame_hamiltonian",
    "rotation_time",
    "rotor",
    "scalar_part",
    "simulate_series",
    "sinch_directional_derivative",
    "synth_fid",
    "synth_window",
    "transition_propagator",
    "verify_cnot",
]
