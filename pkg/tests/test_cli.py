import json

import numpy as np
import pytest

import main
from bounds.integrate import integrated_bound_along
import importlib
from cli.checks import CheckReport
from cli.figures import reproduce_fig1, reproduce_fig2
from cli.run_config import load_run_config, parse_run_config
from cli.runner import build_scenario, run_table
from cli.svg import render_svg
from cli.tables import COLUMNS, CurveTable, read_panel, write_panel
from quantum_core.errors import BoundViolationError, ConfigError, DomainError

# cli/__init__ rebinds `cli.selftest` to the function, so fetch the submodule explicitly
selftest_module = importlib.import_module("cli.selftest")


def _doc(tmp_path, **overrides):
    doc = {
        "scenario": {"name": "dephasing_qubit", "params": {"epsilon": 1.0, "gamma": 1.0}},
        "grid": {"t_end": 2.0, "points": 41},
        "integrator": {"step": 0.005},
        "outputs": [{"csv_path": str(tmp_path / "out" / "run.csv"), "svg_path": str(tmp_path / "out" / "run.svg")}],
        "seed": 3,
    }
    doc.update(overrides)
    return doc


def _write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


# -- config --------------------------------------------------------------------

def test_empty_scenario_name_is_a_config_error(tmp_path):
    doc = _doc(tmp_path, scenario={"name": ""})
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config(doc)
    assert excinfo.value.field == "scenario.name"


def test_unknown_scenario_name(tmp_path):
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config(_doc(tmp_path, scenario={"name": "trapped_ion"}))
    assert excinfo.value.field == "scenario.name"


def test_missing_field_reports_dotted_path(tmp_path):
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config(_doc(tmp_path, grid={"t_end": 1.0}))
    assert excinfo.value.field == "grid.points"


@pytest.mark.parametrize("grid, field", [
    ({"t_end": -1.0, "points": 10}, "grid.t_end"),
    ({"t_end": 1.0, "points": 1}, "grid.points"),
    ({"t_end": "long", "points": 10}, "grid.t_end"),
])
def test_invalid_grid_values(tmp_path, grid, field):
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config(_doc(tmp_path, grid=grid))
    assert excinfo.value.field == field


def test_invalid_integrator_step(tmp_path):
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config(_doc(tmp_path, integrator={"step": 0.0}))
    assert excinfo.value.field == "integrator"


def test_outputs_must_be_listed(tmp_path):
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config(_doc(tmp_path, outputs=[]))
    assert excinfo.value.field == "outputs"
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config(_doc(tmp_path, outputs=[{"svg_path": "x.svg"}]))
    assert excinfo.value.field == "outputs[0].csv_path"


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "scenario": {"name": "dephasing_qubit",,}\n}', encoding="utf-8")
    with pytest.raises(ConfigError) as excinfo:
        load_run_config(path)
    assert "line 2, column" in str(excinfo.value)


def test_load_run_config(tmp_path):
    config = load_run_config(_write_config(tmp_path, _doc(tmp_path)))
    assert config.scenario.name == "dephasing_qubit"
    assert config.grid.points == 41
    assert config.integrator.step == 0.005
    assert config.seed == 3
    assert config.outputs[0].csv_path == tmp_path / "out" / "run.csv"


def test_oscillator_parameters_accept_complex_pairs():
    config = parse_run_config({
        "scenario": {"name": "damped_oscillator", "params": {"n_max": 12, "epsilon": [1.0, 0.5]},
                     "state": {"kind": "coherent", "amplitude": [0.5, 0.0]}},
        "grid": {"t_end": 1.0, "points": 3},
        "outputs": [{"csv_path": "unused.csv"}],
    })
    setup = build_scenario(config.scenario, config.seed)
    assert setup.model.dim == 12
    assert np.trace(setup.rho0).real == pytest.approx(1.0)


def test_oscillator_rejects_unknown_parameter():
    config = parse_run_config({
        "scenario": {"name": "damped_oscillator", "params": {"n_max": 12, "frequency": 3.0}},
        "grid": {"t_end": 1.0, "points": 3},
        "outputs": [{"csv_path": "unused.csv"}],
    })
    with pytest.raises(ConfigError):
        build_scenario(config.scenario, config.seed)


def test_random_scenario_is_seeded(tmp_path):
    config = parse_run_config(_doc(tmp_path, scenario={"name": "random_model"}))
    a = build_scenario(config.scenario, 5)
    b = build_scenario(config.scenario, 5)
    np.testing.assert_allclose(a.rho0, b.rho0)


# -- tables and plots ------------------------------------------------------------

def test_write_panel_leaves_absent_columns_empty(tmp_path):
    path = write_panel(tmp_path / "panel.csv", {"t": [0.0, 1.0], "a": [0.5, 1.5], "b": None})
    assert path.read_text() == "t,a,b\n0,0.5,\n1,1.5,\n"
    data = read_panel(path)
    np.testing.assert_allclose(data["a"], [0.5, 1.5])
    assert np.all(np.isnan(data["b"]))


def test_write_panel_rejects_ragged_columns(tmp_path):
    with pytest.raises(DomainError):
        write_panel(tmp_path / "bad.csv", {"t": [0.0, 1.0], "a": [1.0]})


def test_curve_table_dominance(tmp_path):
    t = np.array([0.0, 1.0])
    table = CurveTable(t=t, qfi_sim=np.array([0.0, 1.0]), qfi_rate_sim=np.ones(2),
                       bounds={"bound_hls": np.array([0.0, 0.5])})
    with pytest.raises(BoundViolationError):
        table.validate()
    with pytest.raises(DomainError):
        CurveTable(t=t, qfi_sim=t, qfi_rate_sim=t, bounds={"bound_magic": t})
    ok = CurveTable(t=t, qfi_sim=t, qfi_rate_sim=t, bounds={"bound_hls": t + 1.0})
    assert set(ok.columns()) == set(COLUMNS)
    assert ok.columns()["bound_hnls"] is None


def test_optimized_column_does_not_inherit_the_simulated_curve():
    t = np.linspace(0.0, 1.0, 11)
    # a zero rate bound integrates to a flat column that F = t² must break
    column = integrated_bound_along(t, 0.0, np.zeros(t.size), np.zeros(t.size))
    table = CurveTable(t=t, qfi_sim=t ** 2, qfi_rate_sim=2.0 * t, bounds={"bound_optimized": column})
    with pytest.raises(BoundViolationError):
        table.validate()


def test_render_svg(tmp_path):
    x = np.linspace(0.0, 1.0, 5)
    path = render_svg(tmp_path / "plot.svg", "demo <plot>", x, {"a": x, "b": x ** 2}, dashed=["b"])
    text = path.read_text(encoding="utf-8")
    assert "<svg" in text
    assert text.count("<polyline") == 2
    assert "demo &lt;plot&gt;" in text


def test_check_report():
    report = CheckReport("demo")
    assert report.check("first", True, "fine")
    assert not report.check("second", False, "broken")
    assert not report.passed
    assert [c.name for c in report.failures] == ["second"]


# -- run command ---------------------------------------------------------------

def test_dephasing_run_writes_dominated_table(tmp_path):
    config_path = _write_config(tmp_path, _doc(tmp_path))
    assert main.main(["run", "--config", str(config_path)]) == 0

    csv_path = tmp_path / "out" / "run.csv"
    lines = csv_path.read_text().splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert len(lines) == 42
    assert (tmp_path / "out" / "run.svg").exists()

    data = read_panel(csv_path)
    for name in ("bound_optimized", "bound_hls", "bound_prior_linear", "bound_prior_quadratic"):
        assert np.all(data[name] >= data["qfi_sim"] - 1e-6)
    assert np.all(np.isnan(data["bound_hnls"]))

    first = csv_path.read_bytes()
    assert main.main(["run", "--config", str(config_path)]) == 0
    assert csv_path.read_bytes() == first


def test_run_table_for_random_model(tmp_path):
    config = parse_run_config(_doc(tmp_path, scenario={"name": "random_model"}, grid={"t_end": 1.0, "points": 21}))
    table = run_table(config)
    assert table.t.size == 21
    assert table.bounds["bound_optimized"] is not None
    assert table.bounds["bound_prior_quadratic"] is not None


def test_main_exit_code_for_config_errors(tmp_path):
    config_path = _write_config(tmp_path, _doc(tmp_path, scenario={"name": ""}))
    assert main.main(["run", "--config", str(config_path)]) == 2
    assert main.main(["run", "--config", str(tmp_path / "missing.json")]) == 2


# -- figures and selftest ----------------------------------------------------------

def test_continuity_group_fails_with_coarse_rank_tol(monkeypatch):
    continuity = [g for g in selftest_module.GROUPS if g[0] == "qfi_continuity"]
    monkeypatch.setattr(selftest_module, "GROUPS", continuity)
    report = selftest_module.selftest(rank_tol=1e-2)
    assert not report.passed
    assert report.failures[0].name == "qfi_continuity"


@pytest.mark.slow
def test_selftest_passes():
    report = selftest_module.selftest()
    assert report.passed, [c.detail for c in report.failures]


@pytest.mark.slow
def test_fig1(tmp_path):
    report = reproduce_fig1(tmp_path)
    assert report.passed, [c.detail for c in report.failures]
    assert (tmp_path / "fig1_ground_qfi.csv").exists()
    assert (tmp_path / "fig1_fock2_rate.svg").exists()


@pytest.mark.slow
def test_fig2(tmp_path):
    report = reproduce_fig2(tmp_path)
    assert report.passed, [c.detail for c in report.failures]
    header = (tmp_path / "fig2_left.csv").read_text().splitlines()[0]
    assert header == "delta,ground,squeezed_gs4"
    widening = [c for c in report.checks if c.name == "squeezed_widening_ratio"]
    assert len(widening) == 1 and widening[0].passed


@pytest.mark.slow
def test_main_selftest_exit_code():
    assert main.main(["selftest"]) == 0
