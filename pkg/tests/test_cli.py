import json

import pytest
from click.testing import CliRunner

from qfeedback import __version__
from qfeedback.main import SweepProcessor, apply_overrides, main
from qfeedback.scenarios import get_preset, preset_path, read_columns


@pytest.fixture
def cli():
    return main()


@pytest.fixture
def runner():
    return CliRunner()


def test_version(runner, cli):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_list_presets(runner, cli):
    result = runner.invoke(cli, ["list-presets"])
    assert result.exit_code == 0
    assert "eigenbasis" in result.output


def test_validate_shipped_preset(runner, cli):
    result = runner.invoke(cli, ["validate", str(preset_path("xbasis-theta"))])
    assert result.exit_code == 0
    assert "Valid" in result.output


def test_validate_reports_single_line_error(runner, cli, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": 1}', encoding="utf-8")

    result = runner.invoke(cli, ["validate", str(bad)])
    assert result.exit_code == 1
    error_lines = [line for line in result.output.splitlines() if "Error:" in line]
    assert len(error_lines) == 1


def nan_state_document():
    nan = [float("nan"), 0.0]
    doc = json.loads(preset_path("orthogonal-blind").read_text(encoding="utf-8"))
    doc["state"] = {"matrix": [[nan, nan], [nan, nan]]}
    doc["estimates"] = {"strategy": "zero"}
    return json.dumps(doc)


def single_error_line(output):
    return len([line for line in output.splitlines() if "Error:" in line]) == 1


def test_validate_rejects_nan_state(runner, cli, tmp_path):
    scenario = tmp_path / "nan.json"
    scenario.write_text(nan_state_document(), encoding="utf-8")

    result = runner.invoke(cli, ["validate", str(scenario)])
    assert result.exit_code == 1
    assert "Valid" not in result.output
    assert single_error_line(result.output)


def test_run_rejects_nan_state(runner, cli, tmp_path):
    scenario = tmp_path / "nan.json"
    scenario.write_text(nan_state_document(), encoding="utf-8")
    out = tmp_path / "nan.csv"

    result = runner.invoke(cli, ["run", str(scenario), "-o", str(out)])
    assert result.exit_code == 1
    assert not out.exists()
    assert "epsilon_squared" not in result.output
    assert single_error_line(result.output)


def test_validate_non_utf8_file(runner, cli, tmp_path):
    scenario = tmp_path / "bad.json"
    scenario.write_bytes(b"\xff\xfe")

    result = runner.invoke(cli, ["validate", str(scenario)])
    assert result.exit_code == 1
    assert not isinstance(result.exception, UnicodeDecodeError)
    assert single_error_line(result.output)


def test_validate_nan_custom_estimate(runner, cli, tmp_path):
    doc = json.loads(preset_path("eigenbasis").read_text(encoding="utf-8"))
    doc["estimates"] = {"strategy": "custom", "values": [
        {"label": 0, "value": float("nan")},
        {"label": 1, "value": -1.0},
    ]}
    scenario = tmp_path / "custom.json"
    scenario.write_text(json.dumps(doc), encoding="utf-8")

    result = runner.invoke(cli, ["validate", str(scenario)])
    assert result.exit_code == 1
    assert single_error_line(result.output)


def test_run_preset_to_file(runner, cli, tmp_path):
    out = tmp_path / "eigenbasis.csv"
    result = runner.invoke(cli, ["run", "--preset", "eigenbasis", "--output", str(out)])

    assert result.exit_code == 0, result.output
    rows = read_columns(out.read_text(encoding="utf-8"))
    assert len(rows) == 11
    assert all(float(row["x_feedback"]) == pytest.approx(1.0, abs=1e-10) for row in rows)


def test_run_scenario_file_to_stdout(runner, cli):
    result = runner.invoke(cli, ["run", str(preset_path("no-measurement")), "--sigma-points", "3"])
    assert result.exit_code == 0, result.output
    assert "sigma,x_no_feedback,x_feedback" in result.output


def test_run_is_byte_identical(runner, cli, tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        assert runner.invoke(cli, ["run", "--preset", "xbasis-theta", "-o", str(out)]).exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_run_with_overrides_and_monte_carlo(runner, cli, tmp_path):
    out = tmp_path / "mc.csv"
    result = runner.invoke(cli, [
        "run", "--preset", "orthogonal-blind",
        "--estimates", "zero",
        "--sigma-start", "0.1", "--sigma-stop", "0.3", "--sigma-points", "3",
        "--mc-shots", "4000", "--seed", "12",
        "--workers", "2",
        "-o", str(out),
    ])

    assert result.exit_code == 0, result.output
    rows = read_columns(out.read_text(encoding="utf-8"))
    assert [float(row["sigma"]) for row in rows] == pytest.approx([0.1, 0.2, 0.3])
    assert all(row["mc_mean"] != "" and row["mc_stderr"] != "" for row in rows)


def test_run_theta_option(runner, cli, tmp_path):
    out = tmp_path / "theta.csv"
    result = runner.invoke(cli, ["run", "--preset", "xbasis-theta", "--theta", "0.3", "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert "# scenario,xbasis-theta" in out.read_text(encoding="utf-8")


def test_run_invalid_strategy_for_scenario(runner, cli, tmp_path):
    result = runner.invoke(cli, ["run", "--preset", "xbasis-theta", "--estimates", "eigenvalue", "-o", str(tmp_path / "x.csv")])
    assert result.exit_code == 1
    assert "Error:" in result.output


def test_run_needs_exactly_one_source(runner, cli):
    assert runner.invoke(cli, ["run"]).exit_code == 2
    both = runner.invoke(cli, ["run", str(preset_path("eigenbasis")), "--preset", "eigenbasis"])
    assert both.exit_code == 2


def test_run_rejects_unknown_preset(runner, cli):
    assert runner.invoke(cli, ["run", "--preset", "nope"]).exit_code == 2


def test_run_custom_file(runner, cli, tmp_path):
    doc = {
        "name": "custom-qubit",
        "dimension": 2,
        "state": {"vector": [[1.0, 0.0], [0.0, 1.0]]},
        "observable": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
        "povm": [{"label": "all", "matrix": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}],
        "estimates": {"strategy": "custom", "values": [{"label": "all", "value": 0.0}]},
        "sigma": {"start": 0.01, "stop": 1.0, "points": 4, "spacing": "log"},
    }
    scenario = tmp_path / "custom.json"
    scenario.write_text(json.dumps(doc), encoding="utf-8")
    out = tmp_path / "custom.csv"

    result = runner.invoke(cli, ["run", str(scenario), "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert len(read_columns(out.read_text(encoding="utf-8"))) == 4


def test_compare(runner, cli):
    result = runner.invoke(cli, ["compare", "--preset", "xbasis-theta"])
    assert result.exit_code == 0, result.output
    assert "weak-value" in result.output


def test_processor_writes_output(tmp_path):
    processor = SweepProcessor(workers=2)
    out = tmp_path / "nested" / "result.csv"
    result = processor.process(processor.load(preset="no-measurement"), out)

    assert result.saved_path == out
    assert out.read_text(encoding="utf-8") == result.csv_text
    assert len(result.convergence.ratios) == 2


def test_processor_load_needs_one_source():
    with pytest.raises(ValueError):
        SweepProcessor().load()


def test_apply_overrides_keeps_spacing():
    spec = get_preset("eigenbasis")
    updated = apply_overrides(spec, sigma_stop=2.0, mc_shots=10)

    assert updated.sweep.stop == 2.0
    assert updated.sweep.start == spec.sweep.start
    assert updated.monte_carlo.shots == 10
    assert updated.monte_carlo.seed == 0


def test_seed_without_shots():
    with pytest.raises(ValueError):
        apply_overrides(get_preset("eigenbasis"), seed=3)
