from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.scheduling.policies import PolicyId


class StrictModel(BaseModel):
    """Scenario sections reject unknown keys."""

    model_config = ConfigDict(extra="forbid")


def _rational(value) -> str:
    try:
        fraction = Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc
    return str(fraction)


class GraphSection(StrictModel):
    """Radio graph as an explicit edge list."""
    nodes: int = Field(..., ge=1)
    edges: list[tuple[int, int]] = []


class InjectionRecord(StrictModel):
    round: int = Field(..., ge=0)
    itinerary: list[int] = Field(..., min_length=2)


class FlowRecord(StrictModel):
    """Injections along one path every ``every`` rounds from ``start``."""
    path: list[int] = Field(..., min_length=2)
    start: int = Field(default=0, ge=0)
    every: int = Field(default=1, ge=1)
    count: Optional[int] = Field(default=None, ge=0)


class AdversarySection(StrictModel):
    rate: str = "0"
    burstiness: int = Field(default=1, ge=1)
    strategy: Literal["stochastic", "scripted"] = "scripted"
    seed: Optional[int] = None
    intensity: float = Field(default=1.0, gt=0.0, le=1.0)
    paths: Optional[list[list[int]]] = None
    max_hops: Optional[int] = Field(default=None, ge=1)
    script: list[InjectionRecord] = []
    flows: list[FlowRecord] = []
    scope: Literal["node", "link"] = "node"

    @field_validator("rate", mode="before")
    @classmethod
    def parse_rate(cls, value):
        return _rational(value)


class TieChoice(StrictModel):
    round: int = Field(..., ge=0)
    node: int = Field(..., ge=0)
    packet: int = Field(..., ge=0)


class TieSection(StrictModel):
    mode: Literal["arbitrary", "permanent"] = "arbitrary"
    strategy: Literal["seeded_random", "scripted", "fixed_id", "link_aware"] = "seeded_random"
    order_rule: Literal["fixed_id", "random_rank"] = "fixed_id"
    choices: list[TieChoice] = []


class ScheduleRecord(StrictModel):
    round: int = Field(..., ge=0)
    up: list[tuple[int, int]] = []
    permitted: list[int] = []


class OracleSection(StrictModel):
    mode: Literal["scripted", "periodic", "work_conserving", "round_robin", "transmitter"]
    schedule: list[ScheduleRecord] = []
    period: Optional[int] = Field(default=None, ge=1)
    latency: Optional[int] = Field(default=None, ge=1)
    regular: bool = False
    rows: list[str] = []
    h: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def check_mode_fields(self):
        if self.mode == "periodic" and self.h is None:
            raise ValueError("periodic oracle needs h")
        if self.mode == "transmitter" and not self.rows:
            raise ValueError("transmitter oracle needs rows")
        return self


class ProtocolSection(StrictModel):
    policy: PolicyId
    tie: TieSection = TieSection()
    oracle: OracleSection
    hearing: Literal["proactive", "reactive"]
    success: Literal["scripted_links", "radio_collision", "interference_free"]


class RunSection(StrictModel):
    horizon: Optional[int] = Field(default=None, ge=0)
    seed: Optional[int] = None
    checkpoints: list[int] = []
    checkpoint_every: Optional[int] = Field(default=None, ge=1)


class AnalysisSection(StrictModel):
    bounds: bool = False
    h: Optional[int] = Field(default=None, ge=1)
    exhaustive_paths: bool = True
    admissibility: bool = False
    link_latency: Optional[int] = Field(default=None, ge=1)
    node_latency: Optional[int] = Field(default=None, ge=1)
    instability: bool = False


class GeneratorSection(StrictModel):
    """Built-in scripted scenario that supplies graph, injections and oracle."""
    kind: Literal["sis_reactive_instability", "tie_blocking"]
    k: int = Field(default=4, ge=2)
    iterations: int = Field(default=10, ge=1)
    burst: int = Field(default=4, ge=2)
    rounds: int = Field(default=1000, ge=2)


class ScenarioFile(StrictModel):
    """A radio scenario document."""
    kind: Literal["radio"] = "radio"
    name: str
    description: Optional[str] = None
    expect: Optional[Literal["stable", "growth", "blocked"]] = None
    generator: Optional[GeneratorSection] = None
    graph: Optional[GraphSection] = None
    adversary: AdversarySection = AdversarySection()
    protocol: ProtocolSection
    run: RunSection = RunSection()
    analysis: AnalysisSection = AnalysisSection()

    @model_validator(mode="after")
    def check_topology(self):
        if self.graph is None and self.generator is None:
            raise ValueError("scenario needs a graph section or a generator")
        if self.graph is not None and self.generator is not None:
            raise ValueError("graph and generator are mutually exclusive")
        return self


class WirelineGraphSection(StrictModel):
    nodes: int = Field(..., ge=1)
    links: list[tuple[int, int]] = Field(..., min_length=1)


class WirelineInjectionRecord(StrictModel):
    round: int = Field(..., ge=0)
    path: list[int] = Field(..., min_length=2)


class WirelineProtocolSection(StrictModel):
    policy: PolicyId
    tie: TieSection = TieSection()


class WirelineScenarioFile(StrictModel):
    """A wireline scenario, input to the equivalent-network transform."""
    kind: Literal["wireline"]
    name: str
    description: Optional[str] = None
    expect: Optional[Literal["stable", "growth"]] = None
    graph: WirelineGraphSection
    injections: list[WirelineInjectionRecord] = []
    flows: list[FlowRecord] = []
    protocol: WirelineProtocolSection
    run: RunSection = RunSection()
