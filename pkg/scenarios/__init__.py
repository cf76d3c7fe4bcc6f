from .qubit import (
    dephasing_qubit, dephasing_closed_form, magnitude_dephasing_qubit, direction_dephasing_qubit,
    dephasing_direction_demo,
)
from .oscillator import (
    OscillatorSpec, StateSpec, OscillatorConstants, make_state, forcing_operator, noise_lindblads,
    damped_oscillator, analytic_coherent_qfi, quadrature_variance_cap, quadrature_variance,
    oscillator_constants,
)
from .bandwidth import (
    AccessibleTrajectory, CascadeResult, MeasureReset, CycleOptimum, SweepTable, StepwiseResult,
    accessible_trajectory, cascade_emission_qfi, spectral_rate, detuning_sweep,
    prepare_measure_reset, optimal_cycle_time, stepwise_signal_qfi, sample_grid,
)
from .nuisance import NuisanceModel, NuisanceReport, nuisance_sigma_check, sigma_rise_time
from .random_models import RandomInstance, random_param_model, random_instance

__all__ = [
    "dephasing_qubit", "dephasing_closed_form", "magnitude_dephasing_qubit",
    "direction_dephasing_qubit", "dephasing_direction_demo",
    "OscillatorSpec", "StateSpec", "OscillatorConstants", "make_state", "forcing_operator",
    "noise_lindblads", "damped_oscillator", "analytic_coherent_qfi", "quadrature_variance_cap",
    "quadrature_variance", "oscillator_constants",
    "AccessibleTrajectory", "CascadeResult", "MeasureReset", "CycleOptimum", "SweepTable",
    "StepwiseResult", "accessible_trajectory", "cascade_emission_qfi", "spectral_rate",
    "detuning_sweep", "prepare_measure_reset", "optimal_cycle_time", "stepwise_signal_qfi", "sample_grid",
    "NuisanceModel", "NuisanceReport", "nuisance_sigma_check", "sigma_rise_time",
    "RandomInstance", "random_param_model", "random_instance",
]
