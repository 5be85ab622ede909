from .bounds import (
    classical_helstrom,
    commuting_optimal_pc,
    ensemble_bound,
    helstrom_binary,
    helstrom_pure,
    ry_zeroed_helstrom,
    square_root_measurement_pc,
    symmetric_mary_bound,
)
from .measurement import MeasurementSetup, detection_matrix, network_pc
from .states import (
    SUPPORTED_ENSEMBLES,
    BlochVector,
    StateEnsemble,
    asymmetric_pair,
    bloch_shrink,
    equiphase_states,
    make_ensemble,
    mixed_pair,
    mub_mixture,
    pure_vs_mixed_pair,
    register_ensemble,
    symmetric_pure_pair,
)

__all__ = [
    "SUPPORTED_ENSEMBLES",
    "BlochVector",
    "MeasurementSetup",
    "StateEnsemble",
    "asymmetric_pair",
    "bloch_shrink",
    "classical_helstrom",
    "commuting_optimal_pc",
    "detection_matrix",
    "ensemble_bound",
    "equiphase_states",
    "helstrom_binary",
    "helstrom_pure",
    "make_ensemble",
    "mixed_pair",
    "mub_mixture",
    "network_pc",
    "pure_vs_mixed_pair",
    "register_ensemble",
    "ry_zeroed_helstrom",
    "square_root_measurement_pc",
    "symmetric_mary_bound",
    "symmetric_pure_pair",
]
