import csv
import json
from pathlib import Path

from jinja2 import Template

from app.schemas.reports import BoundsRow
from app.services.scenario_service import RunResult
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

SUMMARY_TEMPLATE = Template(
    """Scenario: {{ verdicts.scenario }}
Protocol: {{ config.policy.value }} / {{ config.hearing.value }} / {{ config.success.value }} / oracle {{ config.oracle.mode.value }}
Tie-breaking: {{ config.tie.describe() }}
Rounds: {{ verdicts.horizon }} (seed {{ verdicts.seed }})
Packets: {{ verdicts.injected }} injected, {{ verdicts.delivered }} delivered, max queue {{ verdicts.max_queue }}
{% if verdicts.expect %}Expected: {{ verdicts.expect }}, observed: {{ verdicts.observed }}
{% endif %}
Checks:
{% for check in verdicts.checks %}  - {{ check.name }}: {{ "PASS" if check.ok else "FAIL" }}
{% endfor %}{% if bound is not none %}
Bounds ({{ bound.policy }}, b={{ bound.params.b }}, r={{ bound.params.r }}, h={{ bound.params.h }}, d={{ bound.params.d }}):
  queue {{ bound.observed_max_queue }} <= {{ bound.queue_packets }} (exact {{ bound.queue_bound }})
  delay {{ bound.observed_max_delay }} <= {{ bound.delay_bound }} (~{{ "%.2f"|format(bound.delay_bound|float) }})
{% endif %}{% if instability is not none %}
Growth: {{ instability.verdict.value }}, slope {{ "%.5f"|format(instability.slope) }} per round, Q at checkpoints {{ instability.values|join(", ") }}
{% endif %}
Result: {{ "PASS" if verdicts.passed else "FAIL" }}
"""
)


class ReportService:
    """Service for writing run artefacts to an output directory."""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)

    def render_summary(self, result: RunResult) -> str:
        return SUMMARY_TEMPLATE.render(
            verdicts=result.verdicts,
            config=result.config,
            bound=result.bound_report,
            instability=result.instability,
        )

    def bounds_row(self, result: RunResult) -> BoundsRow | None:
        report = result.bound_report
        if report is None:
            return None
        return BoundsRow(
            scenario=result.scenario.name,
            policy=report.policy,
            mode=result.config.hearing.value,
            h=report.params.h,
            r=str(report.params.r),
            b=report.params.b,
            d=report.params.d,
            queue_bound=str(report.queue_bound),
            observed_max=report.observed_max_queue,
            verdict="PASS" if report.ok else "FAIL",
        )

    def write(self, result: RunResult) -> list[Path]:
        """Write trace.jsonl, metrics.csv, bounds.csv, summary.txt and verdicts.json."""
        self.output_dir.mkdir(parents=True, exist_ok=True)
        written = []

        trace_path = self.output_dir / "trace.jsonl"
        with trace_path.open("w", encoding="utf-8") as handle:
            for line in result.trace.iter_jsonl():
                handle.write(line + "\n")
        written.append(trace_path)

        metrics_path = self.output_dir / "metrics.csv"
        metrics_path.write_text(result.trace.metrics_csv(), encoding="utf-8")
        written.append(metrics_path)

        row = self.bounds_row(result)
        if row is not None:
            bounds_path = self.output_dir / "bounds.csv"
            with bounds_path.open("w", encoding="utf-8", newline="") as handle:
                writer = csv.DictWriter(handle, fieldnames=list(BoundsRow.model_fields))
                writer.writeheader()
                writer.writerow(row.model_dump())
            written.append(bounds_path)

        summary_path = self.output_dir / "summary.txt"
        summary_path.write_text(self.render_summary(result), encoding="utf-8")
        written.append(summary_path)

        verdicts_path = self.output_dir / "verdicts.json"
        payload = result.verdicts.model_dump(mode="json")
        payload.update(result.extras)
        verdicts_path.write_text(json.dumps(payload, indent=2, default=str) + "\n", encoding="utf-8")
        written.append(verdicts_path)

        logger.info(f"Wrote {len(written)} artefacts for {result.scenario.name} to {self.output_dir}")
        return written
