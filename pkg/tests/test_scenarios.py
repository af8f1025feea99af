from fractions import Fraction

import pytest

from app.adversary.events import AdmissibilityScope, InjectionStrategy
from app.exceptions import ItineraryError, ScenarioValidationError
from app.oracles.schedules import OracleMode
from app.schemas.scenario import ScenarioFile, WirelineScenarioFile
from tests.conftest import SCENARIOS_DIR

RADIO_SCENARIOS = sorted(
    p.stem for p in SCENARIOS_DIR.glob("*.yaml") if not p.stem.startswith("wireline")
)

MINIMAL = """kind: radio
name: minimal
protocol:
  policy: FIFO
  oracle:
    mode: work_conserving
  hearing: reactive
  success: radio_collision
"""


def test_unknown_key_reports_its_line(scenario_service):
    document = MINIMAL + "graph:\n  nodes: 3\n  colour: red\n"
    with pytest.raises(ScenarioValidationError) as exc:
        scenario_service.parse(document)
    assert exc.value.line == 11
    assert "graph.colour" in str(exc.value)


def test_invalid_yaml(scenario_service):
    with pytest.raises(ScenarioValidationError) as exc:
        scenario_service.parse("name: [unclosed\nkind: radio\n")
    assert "invalid YAML" in str(exc.value)
    assert exc.value.line is not None


def test_document_must_be_a_mapping(scenario_service):
    with pytest.raises(ScenarioValidationError) as exc:
        scenario_service.parse("- a\n- b\n")
    assert exc.value.line == 1


def test_graph_or_generator_required(scenario_service):
    with pytest.raises(ScenarioValidationError):
        scenario_service.parse(MINIMAL)


def test_periodic_oracle_needs_h(scenario_service):
    document = MINIMAL.replace("work_conserving", "periodic") + "graph:\n  nodes: 2\n  edges: [[0, 1]]\n"
    with pytest.raises(ScenarioValidationError):
        scenario_service.parse(document)


def test_missing_file(scenario_service, tmp_path):
    with pytest.raises(ScenarioValidationError):
        scenario_service.load(tmp_path / "absent.yaml")


def test_wireline_dispatch(scenario_service, scenarios_dir):
    assert isinstance(scenario_service.load(scenarios_dir / "wireline-path.yaml"), WirelineScenarioFile)
    assert isinstance(scenario_service.load(scenarios_dir / "tie-blocking.yaml"), ScenarioFile)


def test_generator_supplies_adversary(scenario_service, scenarios_dir):
    scenario = scenario_service.load(scenarios_dir / "sis-reactive-instability-k4.yaml")
    prepared = scenario_service.build(scenario)
    adversary = prepared.config.adversary
    assert adversary.rate == Fraction(1, 8)
    assert adversary.burstiness == 4
    assert adversary.scope == AdmissibilityScope.LINK
    assert prepared.config.oracle.mode == OracleMode.SCRIPTED
    assert prepared.checkpoints == [56 * (i + 1) for i in range(12)]
    assert prepared.config.seed == 7


def test_overrides(scenario_service, scenarios_dir):
    scenario = scenario_service.load(scenarios_dir / "lis-proactive-bounds.yaml")
    prepared = scenario_service.build(scenario, seed=99, horizon=50)
    assert prepared.config.seed == 99
    assert prepared.config.horizon == 50
    assert prepared.config.adversary.strategy == InjectionStrategy.STOCHASTIC
    assert prepared.config.adversary.seed == 99


def test_default_checkpoints(scenario_service):
    document = MINIMAL + "graph:\n  nodes: 2\n  edges: [[0, 1]]\nrun:\n  horizon: 100\n"
    prepared = scenario_service.build(scenario_service.parse(document))
    assert prepared.checkpoints == [0, 11, 22, 33, 44, 55, 66, 77, 88, 99]


def test_checkpoint_every(scenario_service):
    document = (
        MINIMAL
        + "graph:\n  nodes: 2\n  edges: [[0, 1]]\nrun:\n  horizon: 100\n  checkpoint_every: 25\n"
    )
    prepared = scenario_service.build(scenario_service.parse(document))
    assert prepared.checkpoints == [0, 25, 50, 75]


def test_itinerary_must_be_a_walk(scenario_service):
    document = MINIMAL + (
        "graph:\n  nodes: 3\n  edges: [[0, 1], [1, 2]]\n"
        "adversary:\n  rate: 1\n  burstiness: 1\n  script:\n    - round: 0\n      itinerary: [0, 2]\n"
    )
    with pytest.raises(ItineraryError):
        scenario_service.build(scenario_service.parse(document))


def test_transmitter_rows_must_match_nodes(scenario_service):
    document = MINIMAL.replace(
        "    mode: work_conserving\n", "    mode: transmitter\n    rows: ['10', '01']\n"
    ) + "graph:\n  nodes: 3\n  edges: [[0, 1], [1, 2]]\n"
    with pytest.raises(ScenarioValidationError):
        scenario_service.build(scenario_service.parse(document))


def test_reactive_sis_instability_grows(scenario_service, scenarios_dir):
    result = scenario_service.run(scenario_service.load(scenarios_dir / "sis-reactive-instability-k4.yaml"))
    assert result.verdicts.observed == "growth"
    values = list(result.instability.values)
    assert values == [4 * (i + 1) for i in range(12)]
    assert result.admissibility.ok
    assert result.passed


def test_tie_blocking_never_delivers(scenario_service, scenarios_dir):
    result = scenario_service.run(scenario_service.load(scenarios_dir / "tie-blocking.yaml"))
    assert result.verdicts.observed == "blocked"
    assert result.verdicts.injected == 2
    assert result.verdicts.delivered == 0
    assert result.passed


@pytest.mark.parametrize("name", RADIO_SCENARIOS)
def test_bundled_scenarios_pass(scenario_service, scenarios_dir, name):
    result = scenario_service.run(scenario_service.load(scenarios_dir / f"{name}.yaml"))
    assert result.passed, result.verdicts.model_dump()


OVERCLAIMED = """kind: radio
name: overclaimed
graph:
  nodes: 3
  edges: [[0, 1], [0, 2]]
adversary:
  rate: "1"
  burstiness: 4
  script:
    - {round: 0, itinerary: [0, 1]}
    - {round: 0, itinerary: [0, 1]}
    - {round: 0, itinerary: [0, 1]}
    - {round: 0, itinerary: [0, 1]}
protocol:
  policy: FIFO
  tie:
    strategy: fixed_id
  oracle:
    mode: scripted
    schedule:
      - {round: 0, up: [[0, 1]]}
    period: 10
    latency: 1
    regular: true
  hearing: reactive
  success: scripted_links
run:
  horizon: 60
"""


def latency_checks(result):
    return {c.name: c for c in result.verdicts.checks if c.name.endswith("_latency")}


def test_oracle_claims_are_certified_by_default(scenario_service):
    result = scenario_service.run(scenario_service.parse(OVERCLAIMED))
    checks = latency_checks(result)
    assert set(checks) == {"link_latency", "node_latency"}
    for check in checks.values():
        assert not check.ok
        assert check.detail["h"] == 1
        assert check.detail["claimed"] is True
    assert result.verdicts.delivered == 4
    assert not result.passed


def test_round_robin_claim_holds_without_explicit_latencies(scenario_service, scenarios_dir):
    text = (scenarios_dir / "round-robin-regular.yaml").read_text()
    text = text.replace("  link_latency: 4\n  node_latency: 4\n", "")
    result = scenario_service.run(scenario_service.parse(text), horizon=600)
    checks = latency_checks(result)
    assert set(checks) == {"link_latency", "node_latency"}
    assert all(c.ok and c.detail["h"] == 4 and c.detail["claimed"] for c in checks.values())


def test_work_conserving_under_collisions_claims_nothing(scenario_service):
    document = MINIMAL + "graph:\n  nodes: 3\n  edges: [[0, 1], [1, 2]]\n"
    result = scenario_service.run(scenario_service.parse(document), horizon=20)
    assert latency_checks(result) == {}
