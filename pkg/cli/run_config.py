"""
Run Config Module - loads JSON run descriptions into typed dataclasses
- Malformed JSON is reported with line and column
- Missing or invalid fields are reported with their dotted path
"""
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import settings
from dynamics.model import IntegratorConfig
from quantum_core.errors import ConfigError, DomainError

logger = logging.getLogger(__name__)

SCENARIOS = ("dephasing_qubit", "damped_oscillator", "random_model")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    params: Dict[str, Any] = field(default_factory=dict)
    state: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class GridConfig:
    t_end: float
    points: int


@dataclass(frozen=True)
class OutputConfig:
    csv_path: Path
    svg_path: Optional[Path] = None


@dataclass(frozen=True)
class RunConfig:
    scenario: ScenarioConfig
    grid: GridConfig
    integrator: IntegratorConfig
    outputs: List[OutputConfig]
    seed: int = settings.DEFAULT_SEED
    g: float = 0.0


def _require(doc: Dict[str, Any], key: str, path: str):
    if not isinstance(doc, dict):
        raise ConfigError("expected an object", path)
    if key not in doc:
        raise ConfigError("missing required field", f"{path}.{key}" if path else key)
    return doc[key]


def _number(value, path: str, kind=float):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", path)
    if kind is int and not float(value).is_integer():
        raise ConfigError(f"expected an integer, got {value!r}", path)
    if not math.isfinite(value):
        raise ConfigError(f"expected a finite number, got {value!r}", path)
    return kind(value)


def _object(value, path: str) -> Dict[str, Any]:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"expected an object, got {type(value).__name__}", path)
    return dict(value)


def _parse_scenario(doc) -> ScenarioConfig:
    name = _require(doc, "name", "scenario")
    if not isinstance(name, str) or not name.strip():
        raise ConfigError("scenario name must be a non-empty string", "scenario.name")
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario '{name}' (expected one of {SCENARIOS})", "scenario.name")
    return ScenarioConfig(
        name=name,
        params=_object(doc.get("params"), "scenario.params"),
        state=_object(doc.get("state"), "scenario.state"),
    )


def _parse_grid(doc) -> GridConfig:
    t_end = _number(_require(doc, "t_end", "grid"), "grid.t_end")
    points = _number(_require(doc, "points", "grid"), "grid.points", int)
    if t_end <= 0:
        raise ConfigError(f"must be positive, got {t_end}", "grid.t_end")
    if points < 2:
        raise ConfigError(f"need at least 2 points, got {points}", "grid.points")
    return GridConfig(t_end=t_end, points=points)


def _parse_integrator(doc) -> IntegratorConfig:
    doc = _object(doc, "integrator")
    kwargs = {}
    if "step" in doc:
        kwargs["step"] = _number(doc["step"], "integrator.step")
    if "substep_refinement" in doc:
        kwargs["substep_refinement"] = _number(doc["substep_refinement"], "integrator.substep_refinement", int)
    if "hermitize_each_step" in doc:
        if not isinstance(doc["hermitize_each_step"], bool):
            raise ConfigError("expected true or false", "integrator.hermitize_each_step")
        kwargs["hermitize_each_step"] = doc["hermitize_each_step"]
    try:
        return IntegratorConfig(**kwargs)
    except DomainError as e:
        raise ConfigError(str(e), "integrator") from e


def _check_writable(path: Path, field_path: str) -> Path:
    parent = path.parent if str(path.parent) else Path(".")
    if parent.exists() and not parent.is_dir():
        raise ConfigError(f"parent of '{path}' is not a directory", field_path)
    return path


def _parse_outputs(doc, base: Path) -> List[OutputConfig]:
    if not isinstance(doc, list) or not doc:
        raise ConfigError("expected a non-empty list", "outputs")
    outputs = []
    for i, entry in enumerate(doc):
        prefix = f"outputs[{i}]"
        csv_path = _require(entry, "csv_path", prefix)
        if not isinstance(csv_path, str) or not csv_path:
            raise ConfigError("expected a path string", f"{prefix}.csv_path")
        svg_path = entry.get("svg_path")
        if svg_path is not None and (not isinstance(svg_path, str) or not svg_path):
            raise ConfigError("expected a path string", f"{prefix}.svg_path")
        outputs.append(OutputConfig(
            csv_path=_check_writable(base / csv_path, f"{prefix}.csv_path"),
            svg_path=_check_writable(base / svg_path, f"{prefix}.svg_path") if svg_path else None,
        ))
    return outputs


def parse_run_config(doc: Dict[str, Any], base: Path = Path(".")) -> RunConfig:
    """Build a RunConfig from an already decoded JSON document."""
    if not isinstance(doc, dict):
        raise ConfigError("top level must be an object")
    seed = _number(doc.get("seed", settings.DEFAULT_SEED), "seed", int)
    g = _number(doc.get("g", 0.0), "g")
    return RunConfig(
        scenario=_parse_scenario(_require(doc, "scenario", "")),
        grid=_parse_grid(_require(doc, "grid", "")),
        integrator=_parse_integrator(doc.get("integrator")),
        outputs=_parse_outputs(_require(doc, "outputs", ""), base),
        seed=seed,
        g=g,
    )


def load_run_config(path) -> RunConfig:
    """
    Read and validate a run config file. Output paths are resolved relative to
    the working directory.

    Raises:
        ConfigError: unreadable file, malformed JSON (with line/column) or bad field
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file: {e}", str(path)) from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}", str(path)) from e
    config = parse_run_config(doc)
    logger.info("✅ Loaded run config '%s' (scenario %s)", path, config.scenario.name)
    return config
