from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import yaml

from app.adversary.events import AdversarySpec, InjectionStrategy
from app.analysis.equivalence import (
    EquivalenceMap,
    EquivalenceVerdict,
    absorbing_node,
    compare_equivalent_traces,
    equivalent_network,
    transform_injections,
)
from app.analysis.wireline import (
    InjectionFlow,
    WirelineInjection,
    WirelineTrace,
    expand_flows,
    run_wireline,
)
from app.config import settings
from app.engine.config import ExecutionConfig, HearingMode, SuccessModel
from app.engine.orchestrator import run
from app.models.network import NetworkGraph, WirelineGraph
from app.models.trace import ExecutionTrace
from app.oracles.schedules import OracleSchedule
from app.scheduling.policies import PolicyId
from app.schemas.scenario import WirelineScenarioFile
from app.services.scenario_service import tie_mode_from
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass
class TransformResult:
    """Radio scenario document equivalent to a wireline scenario, plus its manifest."""
    document: dict[str, Any]
    manifest: dict[str, Any]
    graph: NetworkGraph
    mapping: EquivalenceMap

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.document, sort_keys=False, default_flow_style=None)


@dataclass
class EquivalenceRun:
    wireline: WirelineTrace
    radio: ExecutionTrace
    verdict: EquivalenceVerdict


class TransformService:
    """Service for the wireline-to-radio transform and its trace comparison."""

    def wireline_graph(self, scenario: WirelineScenarioFile) -> WirelineGraph:
        return WirelineGraph.from_links(scenario.graph.nodes, scenario.graph.links)

    def horizon(self, scenario: WirelineScenarioFile, horizon: Optional[int] = None) -> int:
        if horizon is not None:
            return horizon
        return scenario.run.horizon if scenario.run.horizon is not None else settings.DEFAULT_HORIZON

    def injections(self, scenario: WirelineScenarioFile, horizon: int) -> list[WirelineInjection]:
        explicit = [WirelineInjection(round=i.round, path=tuple(i.path)) for i in scenario.injections]
        flows = [InjectionFlow(tuple(f.path), f.start, f.every, f.count) for f in scenario.flows]
        return sorted(explicit + expand_flows(flows, horizon), key=lambda i: i.round)

    def transform(self, scenario: WirelineScenarioFile) -> TransformResult:
        """Build the equivalent radio scenario.

        Flows stay flows and explicit injections stay explicit, each path rewritten to
        equivalent nodes plus its absorbing node.
        """
        wired = self.wireline_graph(scenario)
        graph, mapping = equivalent_network(wired)

        def radio_path(path) -> list[int]:
            nodes = [mapping.node_of(wired.links[i]) for i in wired.path_links(path)]
            return nodes + [absorbing_node(wired, mapping, path)]

        script = [{"round": i.round, "itinerary": radio_path(i.path)} for i in scenario.injections]
        flows = []
        for flow in scenario.flows:
            record = {"path": radio_path(flow.path), "start": flow.start, "every": flow.every}
            if flow.count is not None:
                record["count"] = flow.count
            flows.append(record)

        run_section = {k: v for k, v in scenario.run.model_dump().items() if v not in (None, [])}
        tie = scenario.protocol.tie.model_dump(exclude_defaults=True)

        document: dict[str, Any] = {
            "kind": "radio",
            "name": f"{scenario.name}-radio",
            "description": f"Equivalent radio execution of wireline scenario {scenario.name}",
            "graph": {"nodes": graph.node_count, "edges": [list(e) for e in graph.sorted_edges()]},
            "adversary": {
                "rate": "1",
                "burstiness": 1,
                "strategy": "scripted",
                "script": script,
                "flows": flows,
            },
            "protocol": {
                "policy": PolicyId(scenario.protocol.policy).value,
                "oracle": {"mode": "work_conserving"},
                "hearing": "proactive",
                "success": "interference_free",
            },
            "run": run_section,
        }
        if tie:
            document["protocol"]["tie"] = tie
        if scenario.expect is not None:
            document["expect"] = scenario.expect

        manifest = {
            "source": scenario.name,
            "radio_scenario": document["name"],
            "links": mapping.to_record()["nodes"],
            "packets": "radio packet ids equal wireline packet ids (injection order)",
            "queues": "wireline queue of link i is radio node i",
        }
        logger.info(
            f"Transformed {scenario.name}: {len(wired.links)} links -> "
            f"{graph.node_count} nodes, {len(graph.edges)} edges"
        )
        return TransformResult(document=document, manifest=manifest, graph=graph, mapping=mapping)

    def run_equivalence(
        self,
        scenario: WirelineScenarioFile,
        horizon: Optional[int] = None,
        hearing: HearingMode = HearingMode.PROACTIVE,
        delay_packet: Optional[int] = None,
    ) -> EquivalenceRun:
        """Run a wireline scenario and its equivalent radio execution, then compare them.

        ``delay_packet`` postpones that packet's radio injection by one round.
        """
        horizon = self.horizon(scenario, horizon)
        seed = scenario.run.seed if scenario.run.seed is not None else settings.DEFAULT_SEED
        wired = self.wireline_graph(scenario)
        injections = self.injections(scenario, horizon)
        tie = tie_mode_from(scenario.protocol.tie, seed)
        policy = PolicyId(scenario.protocol.policy)

        wireline_trace = run_wireline(wired, injections, policy, tie, horizon, seed=seed)

        graph, mapping = equivalent_network(wired)
        events = transform_injections(wired, mapping, injections)
        if delay_packet is not None:
            moved = events[delay_packet]
            events[delay_packet] = type(moved)(round=moved.round + 1, itinerary=moved.itinerary)
            events.sort(key=lambda e: e.round)

        config = ExecutionConfig(
            graph=graph,
            adversary=AdversarySpec(
                rate=Fraction(1),
                burstiness=1,
                strategy=InjectionStrategy.SCRIPTED,
                script=tuple(events),
            ),
            policy=policy,
            tie=tie,
            oracle=OracleSchedule.work_conserving(graph.node_count),
            hearing=hearing,
            success=SuccessModel.INTERFERENCE_FREE,
            horizon=horizon,
            seed=seed,
            label=f"{scenario.name}-radio",
        )
        radio_trace = run(config)
        verdict = compare_equivalent_traces(wireline_trace, radio_trace, mapping)
        logger.info(
            f"Equivalence {scenario.name}: {'PASS' if verdict.ok else 'FAIL'} over {horizon} rounds"
        )
        return EquivalenceRun(wireline=wireline_trace, radio=radio_trace, verdict=verdict)
