from .checks import Check, CheckReport
from .run_config import (
    SCENARIOS, ScenarioConfig, GridConfig, OutputConfig, RunConfig, parse_run_config, load_run_config,
)
from .tables import COLUMNS, CurveTable, write_panel, read_panel
from .svg import render_svg
from .runner import ScenarioSetup, build_scenario, run_table, run
from .figures import reproduce_fig1, reproduce_fig2
from .selftest import GROUPS, selftest

__all__ = [
    "Check", "CheckReport",
    "SCENARIOS", "ScenarioConfig", "GridConfig", "OutputConfig", "RunConfig",
    "parse_run_config", "load_run_config",
    "COLUMNS", "CurveTable", "write_panel", "read_panel",
    "render_svg",
    "ScenarioSetup", "build_scenario", "run_table", "run",
    "reproduce_fig1", "reproduce_fig2",
    "GROUPS", "selftest",
]
