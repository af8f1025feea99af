from dataclasses import dataclass, field
from enum import Enum

from app.adversary.events import AdversarySpec, InjectionEvent, InjectionStrategy
from app.exceptions import ScenarioValidationError
from app.models.network import NetworkGraph
from app.oracles.schedules import OracleMode, OracleSchedule
from app.scheduling.policies import PolicyId
from app.scheduling.ties import TieBreakMode


class HearingMode(str, Enum):
    PROACTIVE = "proactive"
    REACTIVE = "reactive"


class SuccessModel(str, Enum):
    SCRIPTED_LINKS = "scripted_links"
    RADIO_COLLISION = "radio_collision"
    INTERFERENCE_FREE = "interference_free"


@dataclass(frozen=True, eq=False)
class ExecutionConfig:
    """One protocol (oracle, scheduler, hearing control) against one adversary."""

    graph: NetworkGraph
    adversary: AdversarySpec
    policy: PolicyId
    tie: TieBreakMode
    oracle: OracleSchedule
    hearing: HearingMode
    success: SuccessModel
    horizon: int
    seed: int = 0
    check_invariants: bool = True
    label: str = field(default="")

    @property
    def claimed_latency(self) -> int | None:
        """Hearing latency the oracle guarantees under this success model, if any."""
        if self.oracle.mode == OracleMode.WORK_CONSERVING and self.success == SuccessModel.RADIO_COLLISION:
            return None
        return self.oracle.latency

    @property
    def claims_regular(self) -> bool:
        return self.claimed_latency is not None and self.oracle.regular

    def validate(self) -> None:
        if self.horizon < 0:
            raise ScenarioValidationError(f"horizon must be non-negative, got {self.horizon}")
        if self.oracle.node_count != self.graph.node_count:
            raise ScenarioValidationError(
                f"oracle covers {self.oracle.node_count} nodes, graph has {self.graph.node_count}"
            )
        if self.success == SuccessModel.SCRIPTED_LINKS and self.oracle.mode != OracleMode.SCRIPTED:
            raise ScenarioValidationError("scripted_links success needs a scripted oracle")

        if self.oracle.mode == OracleMode.SCRIPTED:
            for round_, indication in self.oracle.records.items():
                for u, w in indication.up_links or ():
                    if not self.graph.has_edge(u, w):
                        raise ScenarioValidationError(
                            f"round {round_}: up link {(u, w)} is not an edge of the graph"
                        )

        if self.adversary.strategy == InjectionStrategy.SCRIPTED:
            for event in self.adversary.script:
                event.validate(self.graph)
        else:
            for path in self.adversary.path_pool:
                InjectionEvent(round=0, itinerary=tuple(path)).validate(self.graph)
