from .depth import default_depth_ensemble, depth_model, run_depth_study
from .montecarlo import (
    McCell,
    McConfig,
    McSummary,
    run_disorder_study,
    run_state_noise_study,
    sample_noisy_ensemble,
    sample_noisy_hamiltonian,
)

__all__ = [
    "McCell",
    "McConfig",
    "McSummary",
    "default_depth_ensemble",
    "depth_model",
    "run_depth_study",
    "run_disorder_study",
    "run_state_noise_study",
    "sample_noisy_ensemble",
    "sample_noisy_hamiltonian",
]
