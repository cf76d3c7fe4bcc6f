"""CSV tables written by the run and figure commands."""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Mapping, Optional, Sequence

import numpy as np

from quantum_core.errors import BoundViolationError, DomainError

logger = logging.getLogger(__name__)

COLUMNS = (
    "t", "qfi_sim", "qfi_rate_sim", "bound_optimized", "bound_hls", "bound_hnls",
    "bound_prior_linear", "bound_prior_quadratic",
)
BOUND_COLUMNS = COLUMNS[3:]
DOMINANCE_TOL = 1e-6
NUMBER_FORMAT = "%.10g"


def _format_column(values: Optional[np.ndarray], n_rows: int) -> np.ndarray:
    if values is None:
        return np.full(n_rows, "", dtype=object)
    return np.array([NUMBER_FORMAT % v for v in values], dtype=object)


def write_panel(path, columns: Mapping[str, Optional[Sequence[float]]]) -> Path:
    """Write named columns as CSV; None columns are left empty."""
    path = Path(path)
    names = list(columns)
    arrays = [None if columns[n] is None else np.asarray(columns[n], dtype=float) for n in names]
    lengths = {a.size for a in arrays if a is not None}
    if len(lengths) != 1:
        raise DomainError(f"columns of {path.name} have different lengths: {sorted(lengths)}")
    n_rows = lengths.pop()

    cells = np.column_stack([_format_column(a, n_rows) for a in arrays])
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, cells, fmt="%s", delimiter=",", header=",".join(names), comments="")
    logger.info("✅ Wrote %s (%d rows)", path, n_rows)
    return path


@dataclass
class CurveTable:
    """Simulated QFI with every bound column; absent bounds are None."""
    t: np.ndarray
    qfi_sim: np.ndarray
    qfi_rate_sim: np.ndarray
    bounds: Dict[str, Optional[np.ndarray]] = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.bounds) - set(BOUND_COLUMNS)
        if unknown:
            raise DomainError(f"unknown bound columns {sorted(unknown)}")
        self.bounds = {name: self.bounds.get(name) for name in BOUND_COLUMNS}

    def columns(self) -> Dict[str, Optional[np.ndarray]]:
        return {"t": self.t, "qfi_sim": self.qfi_sim, "qfi_rate_sim": self.qfi_rate_sim, **self.bounds}

    def validate(self):
        """
        Raises:
            DomainError: t is not strictly increasing
            BoundViolationError: a bound column falls below qfi_sim − 1e-6
        """
        if np.any(np.diff(self.t) <= 0):
            raise DomainError("curve table times are not strictly increasing")
        for name, values in self.bounds.items():
            if values is None:
                continue
            gap = self.qfi_sim - np.asarray(values)
            worst = int(np.argmax(gap))
            if gap[worst] > DOMINANCE_TOL:
                raise BoundViolationError(
                    f"{name} below simulated QFI at t={self.t[worst]:.6g}: "
                    f"{values[worst]:.10g} < {self.qfi_sim[worst]:.10g}"
                )

    def write_csv(self, path) -> Path:
        self.validate()
        return write_panel(path, self.columns())


def read_panel(path) -> Dict[str, np.ndarray]:
    """Read a table written by write_panel; empty cells become NaN."""
    data = np.genfromtxt(path, delimiter=",", names=True, dtype=float, missing_values="", filling_values=np.nan)
    return {name: np.atleast_1d(data[name]) for name in data.dtype.names}
