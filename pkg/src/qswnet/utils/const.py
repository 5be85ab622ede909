SYMMETRIC_PAIR = "symmetric_pair"
ASYMMETRIC_PAIR = "asymmetric_pair"
# name the asymmetric pure-vs-mixed pair goes by on the command line
ASYMMETRIC_PAIR_ALIAS = "fig3_pair"
PURE_VS_MIXED = "pure_vs_mixed"
MIXED_PAIR = "mixed_pair"
EQUIPHASE = "equiphase"
MUB_MIXTURE = "mub_mixture"

BOUND_HELSTROM = "helstrom"
BOUND_SYMMETRIC = "symmetric"

NOISE_MULTIPLICATIVE = "multiplicative"
NOISE_ADDITIVE = "additive"

STUDY_STATE_NOISE = "state_noise"
STUDY_DISORDER = "disorder"

DEFAULT_GAMMA = 1.0

# Tolerances on density matrices
HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-9
PSD_ATOL = 1e-9
PRIORS_ATOL = 1e-12
STOCHASTIC_ATOL = 1e-12
