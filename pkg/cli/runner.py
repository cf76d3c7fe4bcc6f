"""
Runner Module - executes one run config end to end
- Builds the scenario model and starting state
- Propagates ρ, ρ′ and evaluates 𝓕, Ḟ and every bound column on the grid
- Checks rate and QFI dominance before any file is written
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

import settings
from bounds.curves import BoundCurve, quadratic_prior_constant
from bounds.decomposition import bound_coefficients, channel_expectation, optimize_rate_bound, project_to_span
from bounds.integrate import integrated_bound_along
from cli.run_config import RunConfig, ScenarioConfig
from cli.svg import render_svg
from cli.tables import CurveTable
from dynamics.model import ParamModel
from dynamics.propagation import propagate
from fisher.rate import annotate
from fisher.sld import variance
from quantum_core.errors import BoundViolationError, ConfigError, DomainError
from quantum_core.linalg import PAULI_I, PAULI_X
from quantum_core.random_ops import make_rng
from scenarios.oscillator import OscillatorSpec, StateSpec, damped_oscillator, make_state
from scenarios.qubit import dephasing_qubit
from scenarios.random_models import random_instance

logger = logging.getLogger(__name__)

RATE_TOL = 1e-6


@dataclass(frozen=True)
class ScenarioSetup:
    model: ParamModel
    rho0: np.ndarray
    noise: Callable[[float, float], List[np.ndarray]]


def _model_noise(model: ParamModel):
    # every Lindblad channel, the continuum one included, counts as noise for the system QFI
    return lambda t, g: model.generators(t, g)[2]


def _dephasing_setup(scenario: ScenarioConfig, rng) -> ScenarioSetup:
    p = scenario.params
    model = dephasing_qubit(float(p.get("epsilon", 1.0)), float(p.get("gamma", 1.0)))
    rho0 = 0.5 * (PAULI_I + PAULI_X)
    return ScenarioSetup(model, rho0, _model_noise(model))


def _complex(value, path: str) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise ConfigError(f"expected a number or [re, im], got {value!r}", path)


def _oscillator_setup(scenario: ScenarioConfig, rng) -> ScenarioSetup:
    params = dict(scenario.params)
    state = dict(scenario.state)
    if "epsilon" in params:
        params["epsilon"] = _complex(params["epsilon"], "scenario.params.epsilon")
    if "amplitude" in state:
        state["amplitude"] = _complex(state["amplitude"], "scenario.state.amplitude")
    try:
        spec = OscillatorSpec(**params)
        state_spec = StateSpec(**state)
    except TypeError as e:
        raise ConfigError(str(e), "scenario") from e
    model = damped_oscillator(spec)
    return ScenarioSetup(model, make_state(state_spec, spec.n_max), _model_noise(model))


def _random_setup(scenario: ScenarioConfig, rng) -> ScenarioSetup:
    p = scenario.params
    instance = random_instance(rng, int(p.get("max_dim", 4)), int(p.get("max_lindblads", 3)))
    return ScenarioSetup(instance.model, instance.rho0, _model_noise(instance.model))


BUILDERS = {
    "dephasing_qubit": _dephasing_setup,
    "damped_oscillator": _oscillator_setup,
    "random_model": _random_setup,
}


def build_scenario(scenario: ScenarioConfig, seed: int) -> ScenarioSetup:
    """
    Raises:
        ConfigError: unknown scenario or parameters the scenario rejects
    """
    if scenario.name not in BUILDERS:
        raise ConfigError(f"unknown scenario '{scenario.name}'", "scenario.name")
    try:
        return BUILDERS[scenario.name](scenario, make_rng(seed))
    except DomainError as e:
        raise ConfigError(str(e), "scenario") from e


def run_table(config: RunConfig, rank_tol: float = settings.RANK_TOL) -> CurveTable:
    """
    Simulate the configured scenario and evaluate every bound on its grid.

    Constants for the closed-form curves are maxima over the simulated
    trajectory: c1² of Var(H′), c2 of Σ⟨A†A⟩ and c0² of Var(G0) for the
    least-squares span decomposition. The optimized column starts from 𝓕(0) and
    integrates 2√(𝓕_G·F) + 4Σ⟨A†A⟩, with 𝓕_G and Σ⟨A†A⟩ taken from the decomposition
    optimized at each grid point; it never reads 𝓕 after t = 0.

    Raises:
        BoundViolationError: Ḟ exceeds the optimized rate bound, or a bound column
            falls below 𝓕
    """
    setup = build_scenario(config.scenario, config.seed)
    g = config.g
    t_grid = np.linspace(0.0, config.grid.t_end, config.grid.points)
    rho0 = setup.rho0
    points = annotate(
        propagate(setup.model, rho0, np.zeros_like(rho0), g, t_grid, config.integrator),
        setup.model, g, rank_tol,
    )

    t = np.array([p.t for p in points])
    F = np.array([p.qfi for p in points])
    F_dot = np.array([p.qfi_rate for p in points])
    bound_rates = np.empty_like(F)
    generator_qfi = np.empty_like(F)
    channel = np.empty_like(F)
    c1_sq = c2 = c0_sq = quad = 0.0
    all_hls = True

    logger.info("🔄 Optimizing rate bounds at %d grid points", t.size)
    for i, p in enumerate(points):
        H_prime = setup.model.generators(p.t, g)[1]
        noise = setup.noise(p.t, g)
        optimized = optimize_rate_bound(p.rho, max(p.qfi, 0.0), H_prime, noise, rank_tol)
        bound_rates[i] = optimized.bound
        generator_qfi[i], channel[i] = bound_coefficients(p.rho, optimized.decomposition, rank_tol)
        if F_dot[i] > bound_rates[i] + RATE_TOL * max(1.0, abs(bound_rates[i])):
            raise BoundViolationError(
                f"Ḟ = {F_dot[i]:.10g} exceeds optimized rate bound {bound_rates[i]:.10g} at t={p.t:.6g}"
            )
        projection = project_to_span(H_prime, noise)
        c1_sq = max(c1_sq, variance(p.rho, H_prime))
        c2 = max(c2, channel_expectation(p.rho, projection.decomposition.A_ops))
        quad = max(quad, quadratic_prior_constant(H_prime))
        if not projection.hls:
            all_hls = False
            c0_sq = max(c0_sq, variance(p.rho, projection.G0))

    c1 = math.sqrt(c1_sq)
    c0 = math.sqrt(c0_sq)
    bounds = {
        "bound_optimized": integrated_bound_along(t, max(F[0], 0.0), generator_qfi, channel),
        "bound_prior_quadratic": BoundCurve.prior_quadratic(quad)(t),
    }
    if c1 == 0:
        zeros = np.zeros_like(t)
        bounds["bound_hls" if all_hls else "bound_hnls"] = zeros
    elif all_hls:
        bounds["bound_hls"] = BoundCurve.hls(c1, c2)(t)
        bounds["bound_prior_linear"] = BoundCurve.prior_linear(c2)(t)
    else:
        c1 = max(c1, c0)
        bounds["bound_hnls"] = BoundCurve.hnls(c0, c1, c2)(t)
    logger.info("📊 Constants: c0=%.6g c1=%.6g c2=%.6g (%s)", c0, c1, c2, "HLS" if all_hls else "HNLS")

    table = CurveTable(t=t, qfi_sim=F, qfi_rate_sim=F_dot, bounds=bounds)
    table.validate()
    return table


def run(config: RunConfig, rank_tol: float = settings.RANK_TOL) -> CurveTable:
    """Run the config and write every requested CSV (and SVG) output."""
    table = run_table(config, rank_tol)
    for output in config.outputs:
        table.write_csv(output.csv_path)
        if output.svg_path is not None:
            present = {k: v for k, v in table.columns().items() if v is not None and k not in ("t", "qfi_rate_sim")}
            render_svg(
                output.svg_path,
                title=f"QFI and bounds: {config.scenario.name}",
                x=table.t,
                series=present,
                y_label="F(t)",
                dashed=[k for k in present if k.startswith("bound_prior")],
            )
    return table
