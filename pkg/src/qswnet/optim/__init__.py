from .finite_difference import finite_difference_gradient
from .optimizer import DetectionObjective, OptimizationResult, OptimizerConfig, maximize, objective
from .parametrization import ParameterLayout, ParameterVector, decode

__all__ = [
    "DetectionObjective",
    "OptimizationResult",
    "OptimizerConfig",
    "ParameterLayout",
    "ParameterVector",
    "decode",
    "finite_difference_gradient",
    "maximize",
    "objective",
]
