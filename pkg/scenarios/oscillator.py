"""
Damped, forced harmonic oscillator in the rotating frame

    H(t, g) = δω·N + g·H₁
    L₁ = √(γ(n_T+1))·a,  L₂ = √(γn_T)·a†,  optional continuum channel √κ·a

with H₁ = iεa† − iε*a (linear), ω_f·N plus the linear part (quadratic) or
εa² + ε*a†² (two_photon). The continuum channel carries information out of the
mode and is left out of the noise set used for bounds.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import List

import numpy as np

import settings
from bounds.curves import BoundConstants
from bounds.decomposition import channel_expectation, project_to_span
from dynamics.model import ParamModel
from fisher.sld import variance
from quantum_core.errors import DomainError, TruncationLeakageError
from quantum_core.fock import annihilation, displacement, fock_ket, number_operator, quadratures, squeeze_operator
from quantum_core.linalg import ket_to_density

logger = logging.getLogger(__name__)

FORCING_KINDS = ("linear", "quadratic", "two_photon")
STATE_KINDS = ("coherent", "fock", "squeezed_coherent", "ground")
NORM_TOL = 1e-9
LEAKAGE_LEVELS = 2


@dataclass(frozen=True)
class OscillatorSpec:
    n_max: int = settings.FOCK_N_MAX
    gamma: float = 1.0
    n_T: float = 0.0
    epsilon: complex = 1.0
    detuning: float = 0.0
    forcing_kind: str = "linear"
    extra_damping: float = 0.0
    extra_damping_on: float = 0.0
    omega_f: float = 0.0
    source_squeeze: float = 1.0

    def __post_init__(self):
        if self.n_max < 8:
            raise DomainError(f"n_max must be ≥ 8, got {self.n_max}")
        if self.forcing_kind not in FORCING_KINDS:
            raise DomainError(f"unknown forcing kind '{self.forcing_kind}' (expected one of {FORCING_KINDS})")
        for name in ("gamma", "n_T", "extra_damping"):
            value = getattr(self, name)
            if value < 0 or not math.isfinite(value):
                raise DomainError(f"{name} must be finite and ≥ 0, got {value}")
        if self.source_squeeze < 1:
            raise DomainError(f"source_squeeze must be ≥ 1, got {self.source_squeeze}")

    @property
    def gamma_t(self) -> float:
        """γ_T = γ(2n_T + 1)."""
        return self.gamma * (2.0 * self.n_T + 1.0)

    @property
    def forcing_phase(self) -> float:
        return float(np.angle(self.epsilon)) if self.epsilon != 0 else 0.0

    def with_detuning(self, detuning: float) -> "OscillatorSpec":
        return replace(self, detuning=detuning)


@dataclass(frozen=True)
class StateSpec:
    kind: str = "ground"
    amplitude: complex = 0.0
    n: int = 0
    squeeze: float = 1.0
    squeeze_phase: float = 0.0

    def __post_init__(self):
        if self.kind not in STATE_KINDS:
            raise DomainError(f"unknown state kind '{self.kind}' (expected one of {STATE_KINDS})")
        if self.squeeze < 1:
            raise DomainError(f"squeeze factor G_s must be ≥ 1, got {self.squeeze}")
        if self.n < 0:
            raise DomainError(f"Fock level must be ≥ 0, got {self.n}")


def make_state(spec: StateSpec, n_max: int):
    """
    Density operator for a StateSpec on the truncated space.

    Squeezed states use S(ξ) with ξ = ½ln(G_s)·e^{2iφ}, which multiplies the
    variance of p̃_φ by G_s and divides that of x̃_φ by G_s.

    Raises:
        DomainError: the state would not fit the truncation with margin
        TruncationLeakageError: the truncated ket lost more than 1e-9 of its norm
    """
    if spec.kind == "ground":
        return ket_to_density(fock_ket(0, n_max))
    if spec.kind == "fock":
        if spec.n > n_max - 6:
            raise DomainError(f"Fock level {spec.n} too close to truncation n_max={n_max}")
        return ket_to_density(fock_ket(spec.n, n_max))

    amp = abs(spec.amplitude)
    if amp ** 2 + 6.0 * amp + 10.0 > n_max:
        raise DomainError(f"|α| = {amp:.3g} needs n_max ≥ {amp ** 2 + 6 * amp + 10:.0f}, got {n_max}")
    psi = fock_ket(0, n_max)
    if spec.kind == "squeezed_coherent":
        xi = 0.5 * math.log(spec.squeeze) * np.exp(2j * spec.squeeze_phase)
        psi = squeeze_operator(xi, n_max) @ psi
    psi = displacement(spec.amplitude, n_max) @ psi

    norm = float(np.linalg.norm(psi))
    if abs(norm ** 2 - 1.0) > NORM_TOL:
        raise TruncationLeakageError(f"{spec.kind} state lost {abs(1 - norm ** 2):.3e} of its norm at n_max={n_max}")
    return ket_to_density(psi / norm)


def forcing_operator(spec: OscillatorSpec) -> np.ndarray:
    """H′ = ∂H/∂g for the configured forcing kind."""
    a = annihilation(spec.n_max)
    ad = a.conj().T
    eps = complex(spec.epsilon)
    linear = 1j * eps * ad - 1j * np.conj(eps) * a
    if spec.forcing_kind == "linear":
        return linear
    if spec.forcing_kind == "quadratic":
        return spec.omega_f * number_operator(spec.n_max) + linear
    return eps * a @ a + np.conj(eps) * ad @ ad


def noise_lindblads(spec: OscillatorSpec) -> List[np.ndarray]:
    """Intrinsic noise channels (the continuum channel is not noise)."""
    a = annihilation(spec.n_max)
    ops = []
    if spec.gamma > 0:
        ops.append(math.sqrt(spec.gamma * (spec.n_T + 1.0)) * a)
    if spec.gamma > 0 and spec.n_T > 0:
        ops.append(math.sqrt(spec.gamma * spec.n_T) * a.conj().T)
    return ops


def continuum_operator(spec: OscillatorSpec, t: float) -> np.ndarray:
    """√κ·a once the continuum channel is on, else zero."""
    a = annihilation(spec.n_max)
    if spec.extra_damping > 0 and t >= spec.extra_damping_on:
        return math.sqrt(spec.extra_damping) * a
    return np.zeros_like(a)


def damped_oscillator(spec: OscillatorSpec, include_continuum: bool = True) -> ParamModel:
    """
    Driven damped oscillator with H(g) = δω·n + g·H′ and g-independent noise.

    The spec fixes every operator; g is supplied at propagation time, so one model
    serves all parameter values. include_continuum appends the √κ·a output channel,
    switched on at spec.extra_damping_on; without it the model carries only the
    intrinsic noise channels.
    """
    H1 = forcing_operator(spec)
    H0 = spec.detuning * number_operator(spec.n_max)
    lindblads = [(lambda t, g, L=L: L) for L in noise_lindblads(spec)]
    if include_continuum and spec.extra_damping > 0:
        on = continuum_operator(spec, spec.extra_damping_on)
        off = np.zeros_like(on)
        lindblads.append(lambda t, g: on if t >= spec.extra_damping_on else off)
    return ParamModel(
        dim=spec.n_max,
        hamiltonian=lambda t, g: H0 + g * H1,
        hamiltonian_deriv=lambda t, g: H1,
        lindblads=tuple(lindblads),
        leakage_levels=LEAKAGE_LEVELS,
        name=f"damped_oscillator[{spec.forcing_kind}]",
    )


def analytic_coherent_qfi(epsilon: complex, gamma: float, t):
    """𝓕(t) = 16|ε|²/γ²·(1 − e^{−γt/2})², the same for every coherent start."""
    if gamma <= 0:
        raise DomainError(f"gamma must be > 0, got {gamma}")
    t = np.asarray(t, dtype=float)
    value = 16.0 * abs(epsilon) ** 2 / gamma ** 2 * np.expm1(-gamma * t / 2.0) ** 2
    return float(value) if value.ndim == 0 else value


def quadrature_variance_cap(n_bar: float) -> float:
    """Largest σ²_p̃ compatible with ⟨N⟩ = N̄ (saturated by squeezed vacuum)."""
    if n_bar < 0:
        raise DomainError(f"mean occupation must be ≥ 0, got {n_bar}")
    return 0.5 + n_bar + math.sqrt(n_bar * (n_bar + 1.0))


def quadrature_variance(spec: OscillatorSpec, rho) -> float:
    """σ²_p̃ for the quadrature conjugate to the linear forcing."""
    _, p = quadratures(spec.forcing_phase, spec.n_max)
    return variance(rho, p)


@dataclass(frozen=True)
class OscillatorConstants:
    constants: BoundConstants
    hnls: bool
    source: str

    @property
    def c0(self) -> float:
        return self.constants.c0

    @property
    def c1(self) -> float:
        return self.constants.c1

    @property
    def c2(self) -> float:
        return self.constants.c2

    @property
    def t_c(self) -> float:
        return self.constants.t_c


def oscillator_constants(spec: OscillatorSpec, rho) -> OscillatorConstants:
    """
    Bound constants (c0, c1, c2) for the oscillator evaluated on the state rho.

    c1² = Var_ρ(H′) bounds 𝓕_{H′}/4. Linear forcing uses c2 = |ε|²/γ_T; quadratic
    forcing at n_T = 0 uses c2 = (|ε| + |ω_f|√⟨N⟩)²/γ. Everything else takes c0
    and c2 from the least-squares span projection of H′.
    """
    rho = np.asarray(rho, dtype=complex)
    H1 = forcing_operator(spec)
    c1 = math.sqrt(variance(rho, H1))

    if spec.forcing_kind == "linear" and spec.gamma > 0:
        c2 = abs(spec.epsilon) ** 2 / spec.gamma_t
        return OscillatorConstants(BoundConstants.for_hls(c1, c2), hnls=False, source="closed_form")

    if spec.forcing_kind == "quadratic" and spec.n_T == 0 and spec.gamma > 0:
        n_bar = float(np.trace(rho @ number_operator(spec.n_max)).real)
        c2 = (abs(spec.epsilon) + abs(spec.omega_f) * math.sqrt(max(n_bar, 0.0))) ** 2 / spec.gamma
        return OscillatorConstants(BoundConstants.for_hls(c1, c2), hnls=False, source="closed_form")

    projection = project_to_span(H1, noise_lindblads(spec))
    c2 = channel_expectation(rho, projection.decomposition.A_ops)
    if projection.hls:
        return OscillatorConstants(BoundConstants.for_hls(c1, c2), hnls=False, source="projection")
    c0 = math.sqrt(variance(rho, projection.G0))
    logger.info("📊 %s forcing is outside the Lindblad span (‖G0‖ = %.3e)", spec.forcing_kind, projection.residual_norm)
    # c1 only needs to bound 𝓕_{H′}/4, so raising it to c0 keeps it valid
    c1 = max(c1, c0)
    return OscillatorConstants(BoundConstants.for_hnls(c0, c1, c2), hnls=True, source="projection")

