from .sld import SLD, GeneratorQfi, solve_sld, qfi, qfi_wrt_operator, variance
from .rate import QfiSample, qfi_rate, annotate, qfi_samples
from .classical import classical_fi, fock_distribution

__all__ = [
    "SLD", "GeneratorQfi", "solve_sld", "qfi", "qfi_wrt_operator", "variance",
    "QfiSample", "qfi_rate", "annotate", "qfi_samples", "classical_fi", "fock_distribution",
]
