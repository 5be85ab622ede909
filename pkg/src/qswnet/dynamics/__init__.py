from .density import DensityMatrix
from .evolution import evolve, evolve_grid, evolve_many, propagator, sink_populations
from .liouvillian import (
    Hamiltonian,
    Liouvillian,
    RealBlockForm,
    TransitionMatrix,
    build_liouvillian,
    liouvillian_matrix,
    real_block_form,
    unvec,
    vec,
)

__all__ = [
    "DensityMatrix",
    "Hamiltonian",
    "Liouvillian",
    "RealBlockForm",
    "TransitionMatrix",
    "build_liouvillian",
    "evolve",
    "evolve_grid",
    "evolve_many",
    "liouvillian_matrix",
    "propagator",
    "real_block_form",
    "sink_populations",
    "unvec",
    "vec",
]
