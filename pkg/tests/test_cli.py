import json

import pytest
import yaml
from typer.testing import CliRunner

from app.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, app

runner = CliRunner()


def test_run_writes_artefacts(scenarios_dir, tmp_path):
    result = runner.invoke(
        app, ["run", str(scenarios_dir / "sis-reactive-instability-k4.yaml"), "--out", str(tmp_path)]
    )
    assert result.exit_code == EXIT_OK, result.output
    assert "Result: PASS" in result.output
    verdicts = json.loads((tmp_path / "verdicts.json").read_text())
    assert verdicts["observed"] == "growth"
    assert (tmp_path / "trace.jsonl").exists()


def test_run_bounds_scenario(scenarios_dir, tmp_path):
    result = runner.invoke(
        app,
        ["run", str(scenarios_dir / "lis-proactive-bounds.yaml"), "--out", str(tmp_path), "--horizon", "300"],
    )
    assert result.exit_code == EXIT_OK, result.output
    assert (tmp_path / "bounds.csv").exists()


def test_run_unmet_expectation_fails(scenarios_dir, tmp_path):
    # Too few rounds for the growth checkpoints.
    result = runner.invoke(
        app,
        ["run", str(scenarios_dir / "sis-reactive-instability-k4.yaml"), "--out", str(tmp_path), "--horizon", "100"],
    )
    assert result.exit_code == EXIT_FAILED


def test_run_malformed_scenario(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("kind: radio\nname: bad\nprotocol: {policy: NOPE}\n")
    result = runner.invoke(app, ["run", str(path), "--out", str(tmp_path / "out")])
    assert result.exit_code == EXIT_ERROR


def test_run_rejects_wireline(scenarios_dir, tmp_path):
    result = runner.invoke(app, ["run", str(scenarios_dir / "wireline-path.yaml"), "--out", str(tmp_path)])
    assert result.exit_code == EXIT_ERROR


def test_batch(scenarios_dir, tmp_path):
    result = runner.invoke(
        app,
        [
            "batch",
            str(scenarios_dir / "tie-blocking.yaml"),
            str(scenarios_dir / "tie-blocking-permanent.yaml"),
            "--out",
            str(tmp_path),
            "--workers",
            "2",
        ],
    )
    assert result.exit_code == EXIT_OK, result.output
    assert (tmp_path / "tie-blocking" / "summary.txt").exists()
    assert (tmp_path / "tie-blocking-permanent" / "verdicts.json").exists()


def test_batch_reports_errors(scenarios_dir, tmp_path):
    result = runner.invoke(
        app,
        ["batch", str(scenarios_dir / "tie-blocking.yaml"), str(tmp_path / "absent.yaml"), "--out", str(tmp_path)],
    )
    assert result.exit_code == EXIT_ERROR


def test_transform_writes_scenario_and_manifest(scenarios_dir, tmp_path):
    result = runner.invoke(app, ["transform", str(scenarios_dir / "wireline-path.yaml"), "--out", str(tmp_path)])
    assert result.exit_code == EXIT_OK, result.output
    document = yaml.safe_load((tmp_path / "wireline-path-radio.yaml").read_text())
    assert document["graph"]["nodes"] == 3
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["radio_scenario"] == "wireline-path-radio"


def test_transform_check(scenarios_dir, tmp_path):
    result = runner.invoke(
        app,
        ["transform", str(scenarios_dir / "wireline-triangle.yaml"), "--out", str(tmp_path), "--check"],
    )
    assert result.exit_code == EXIT_OK, result.output
    assert "Equivalent" in result.output


def test_transform_rejects_radio(scenarios_dir):
    result = runner.invoke(app, ["transform", str(scenarios_dir / "tie-blocking.yaml")])
    assert result.exit_code == EXIT_ERROR


@pytest.mark.parametrize(
    "rows, code",
    [("100\n010\n001\n", EXIT_OK), ("11\n11\n", EXIT_FAILED), ("10\n2\n", EXIT_ERROR)],
)
def test_verify_transmitter(tmp_path, rows, code):
    path = tmp_path / "array.txt"
    path.write_text(rows)
    result = runner.invoke(app, ["verify-transmitter", str(path)])
    assert result.exit_code == code


def test_verify_missing_file(tmp_path):
    result = runner.invoke(app, ["verify-transmitter", str(tmp_path / "absent.txt")])
    assert result.exit_code == EXIT_ERROR


def test_generated_transmitter_verifies(tmp_path):
    path = tmp_path / "array.txt"
    result = runner.invoke(app, ["generate-transmitter", "6", "--out", str(path), "--seed", "3"])
    assert result.exit_code == EXIT_OK, result.output
    assert runner.invoke(app, ["verify-transmitter", str(path)]).exit_code == EXIT_OK


def test_bounds():
    result = runner.invoke(app, ["bounds", "--policy", "sis", "--b", "1", "--r", "1/4", "--h", "2", "--d", "2"])
    assert result.exit_code == EXIT_OK
    assert "delay bound" in result.output
    assert "28" in result.output


def test_bounds_help_explains_d():
    result = runner.invoke(app, ["bounds", "--help"])
    assert result.exit_code == EXIT_OK
    assert "absorbing" in result.output


@pytest.mark.parametrize("r", ["1/2", "1/0"])
def test_bounds_outside_domain(r):
    result = runner.invoke(app, ["bounds", "--policy", "sis", "--b", "1", "--r", r, "--h", "2", "--d", "2"])
    assert result.exit_code == EXIT_ERROR


def test_bounds_unknown_policy():
    result = runner.invoke(app, ["bounds", "--policy", "fifo", "--b", "1", "--r", "0", "--h", "1", "--d", "1"])
    assert result.exit_code == EXIT_ERROR
