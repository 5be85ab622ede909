from .classical_walk import (
    P1Params,
    delta_rho,
    optimal_params_p1,
    optimal_t_p1,
    pc_p1_asymptote,
    pc_p1_closed,
    rho33_p1_closed,
    rho44_p1_closed,
)
from .invariant import InvariantSubspaceReport, invariant_subspace_report
from .quantum_walk import (
    P0Ansatz,
    canonical_pair_rotation,
    fundamental_matrix_p0,
    ode_matrix_p0,
    optimal_h_p0,
    optimal_xi_p0,
    pc_p0_closed,
    rho33_p0_closed,
    rotated_ansatz,
    wronskian_p0,
)

__all__ = [
    "InvariantSubspaceReport",
    "P0Ansatz",
    "P1Params",
    "canonical_pair_rotation",
    "delta_rho",
    "fundamental_matrix_p0",
    "invariant_subspace_report",
    "ode_matrix_p0",
    "optimal_h_p0",
    "optimal_params_p1",
    "optimal_t_p1",
    "optimal_xi_p0",
    "pc_p0_closed",
    "pc_p1_asymptote",
    "pc_p1_closed",
    "rho33_p0_closed",
    "rho33_p1_closed",
    "rho44_p1_closed",
    "rotated_ansatz",
    "wronskian_p0",
]
