import csv
import json

from app.services.report_service import ReportService


def test_writes_every_artefact(scenario_service, scenarios_dir, tmp_path):
    scenario = scenario_service.load(scenarios_dir / "lis-proactive-bounds.yaml")
    result = scenario_service.run(scenario, horizon=200)
    written = ReportService(tmp_path / "out").write(result)

    assert sorted(p.name for p in written) == [
        "bounds.csv",
        "metrics.csv",
        "summary.txt",
        "trace.jsonl",
        "verdicts.json",
    ]
    lines = (tmp_path / "out" / "trace.jsonl").read_text().splitlines()
    assert json.loads(lines[0])["type"] == "header"
    assert len(lines) == 1 + 200 + result.trace.injected

    with (tmp_path / "out" / "bounds.csv").open() as handle:
        rows = list(csv.DictReader(handle))
    assert rows[0]["policy"] == "LIS"
    assert rows[0]["r"] == "1/6"
    assert rows[0]["verdict"] == "PASS"

    verdicts = json.loads((tmp_path / "out" / "verdicts.json").read_text())
    assert verdicts["passed"] is True
    assert {c["name"] for c in verdicts["checks"]} == {"bounds", "admissibility", "link_latency"}


def test_summary_without_bounds(scenario_service, scenarios_dir, tmp_path):
    scenario = scenario_service.load(scenarios_dir / "tie-blocking.yaml")
    result = scenario_service.run(scenario, horizon=100)
    reports = ReportService(tmp_path)
    summary = reports.render_summary(result)

    assert reports.bounds_row(result) is None
    assert "Expected: blocked, observed: blocked" in summary
    assert "Growth: bounded" in summary
    assert summary.rstrip().endswith("Result: PASS")
    assert not (tmp_path / "bounds.csv").exists()
