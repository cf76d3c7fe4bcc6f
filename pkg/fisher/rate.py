"""Exact QFI growth rate Ḟ along a trajectory."""
from dataclasses import dataclass, replace
from typing import List, Optional, Union

import numpy as np

import settings
from dynamics.model import ParamModel, TrajectoryPoint
from fisher.sld import SLD, qfi_wrt_operator, solve_sld
from quantum_core.errors import DimensionMismatchError


def qfi_rate(rho, sld: Union[SLD, np.ndarray], model: ParamModel, t: float, g: float) -> float:
    """
    Ḟ = 2i tr(ρ[H′,𝓛]) − Σ_j tr(ρ[L_j,𝓛]†[L_j,𝓛])
        − 2 Σ_j Re tr(ρ(L_j′†[L_j,𝓛] + L_j†[L_j′,𝓛]))

    The last sum only appears for g-dependent Lindblad operators. `sld` may be a
    solved SLD or any Hermitian 𝓛 imposed by the caller.
    """
    rho = np.asarray(rho, dtype=complex)
    S = sld.operator if isinstance(sld, SLD) else np.asarray(sld, dtype=complex)
    if rho.shape != S.shape or rho.shape != (model.dim, model.dim):
        raise DimensionMismatchError(
            f"rho {rho.shape}, SLD {S.shape} and model dimension {model.dim} disagree"
        )
    _, Hp, Ls, Lps = model.generators(t, g)

    value = 2j * np.trace(rho @ (Hp @ S - S @ Hp))
    for L, Lp in zip(Ls, Lps):
        C = L @ S - S @ L
        value -= np.trace(rho @ C.conj().T @ C)
        if Lp is not None:
            Cp = Lp @ S - S @ Lp
            value -= 2.0 * np.trace(rho @ (Lp.conj().T @ C + L.conj().T @ Cp)).real
    return float(np.real(value))


def annotate(
    points: List[TrajectoryPoint],
    model: ParamModel,
    g: float,
    rank_tol: float = settings.RANK_TOL,
) -> List[TrajectoryPoint]:
    """Return copies of the points with qfi and qfi_rate filled in."""
    annotated = []
    for p in points:
        sld = solve_sld(p.rho, p.rho_prime, rank_tol)
        annotated.append(replace(p, qfi=sld.qfi, qfi_rate=qfi_rate(p.rho, sld, model, p.t, g)))
    return annotated


@dataclass(frozen=True)
class QfiSample:
    t: float
    qfi: float
    qfi_rate: float
    fg: Optional[float] = None


def qfi_samples(
    points: List[TrajectoryPoint],
    model: ParamModel,
    g: float,
    generator: Optional[np.ndarray] = None,
    rank_tol: float = settings.RANK_TOL,
) -> List[QfiSample]:
    """Flatten a trajectory into QfiSample rows; fg = 𝓕_G when a generator G is given."""
    samples = []
    for p in annotate(points, model, g, rank_tol):
        fg = None if generator is None else qfi_wrt_operator(p.rho, generator, rank_tol)
        samples.append(QfiSample(t=p.t, qfi=p.qfi, qfi_rate=p.qfi_rate, fg=fg))
    return samples
