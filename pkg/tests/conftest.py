from fractions import Fraction
from pathlib import Path

import pytest

from app.adversary.events import AdversarySpec, InjectionEvent, InjectionStrategy
from app.engine.config import ExecutionConfig, HearingMode, SuccessModel
from app.models.network import NetworkGraph
from app.oracles.schedules import OracleSchedule
from app.scheduling.policies import PolicyId
from app.scheduling.ties import TieBreakMode
from app.services.scenario_service import ScenarioService

SCENARIOS_DIR = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture
def scenarios_dir() -> Path:
    return SCENARIOS_DIR


@pytest.fixture
def scenario_service() -> ScenarioService:
    return ScenarioService()


@pytest.fixture
def star() -> NetworkGraph:
    """Centre 0 with leaves 1 and 2."""
    return NetworkGraph.from_edges(3, [(0, 1), (0, 2)])


@pytest.fixture
def path3() -> NetworkGraph:
    return NetworkGraph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def path4() -> NetworkGraph:
    return NetworkGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def make_config():
    """Factory for scripted-injection execution configs."""

    def factory(
        graph: NetworkGraph,
        events=(),
        *,
        policy: str = "FIFO",
        tie: TieBreakMode | None = None,
        oracle: OracleSchedule | None = None,
        hearing: str = "reactive",
        success: str = "radio_collision",
        horizon: int = 10,
    ) -> ExecutionConfig:
        script = tuple(
            e if isinstance(e, InjectionEvent) else InjectionEvent(round=e[0], itinerary=tuple(e[1]))
            for e in events
        )
        return ExecutionConfig(
            graph=graph,
            adversary=AdversarySpec(
                rate=Fraction(1),
                burstiness=max(len(script), 1),
                strategy=InjectionStrategy.SCRIPTED,
                script=script,
            ),
            policy=PolicyId(policy),
            tie=tie or TieBreakMode.arbitrary("fixed_id"),
            oracle=oracle or OracleSchedule.work_conserving(graph.node_count),
            hearing=HearingMode(hearing),
            success=SuccessModel(success),
            horizon=horizon,
        )

    return factory
