"""Exact simulator for heralded single-photon shaping.

Thin re-export of the compiled core; see the project README for the
scenario schema and the command-line interface.
"""

from ._core import (
    ClickStats,
    HeraldOutcome,
    JointState,
    LossResult,
    ModulationResult,
    ScenarioParseError,
    SchmidtTerm,
    apply_loss,
    apply_modulator,
    bucket_detect,
    correlated_pair,
    default_seed,
    dft_matrix,
    entanglement_entropy,
    eraser_basis,
    fidelity,
    frame_probabilities,
    generalized_bell,
    hyperentangled,
    is_unbiased,
    kron,
    measure_idler,
    multiphoton_success,
    multiphoton_success_log10,
    partial_trace,
    phase_correct,
    purity,
    rescale_to_physical,
    run_scenario_json,
    schmidt_decompose,
    shaped_entangled,
    simulate_clicks,
    standard_ic_frame,
    state_vector,
    tomography_reconstruct,
    trace_norm_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
