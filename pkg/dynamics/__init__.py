from .model import (
    ParamModel, IntegratorConfig, TrajectoryPoint, OperatorMap, linear_model,
    check_derivatives, times,
)
from .propagation import (
    lindblad_rhs, derivative_rhs, second_derivative_rhs, propagate, fd_rho_prime,
    fd_rho_second, default_delta,
)

__all__ = [
    "ParamModel", "IntegratorConfig", "TrajectoryPoint", "OperatorMap", "linear_model",
    "check_derivatives", "times",
    "lindblad_rhs", "derivative_rhs", "second_derivative_rhs", "propagate",
    "fd_rho_prime", "fd_rho_second", "default_delta",
]
