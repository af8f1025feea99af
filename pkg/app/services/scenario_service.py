from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import yaml
from pydantic import ValidationError

from app.adversary.admissibility import AdmissibilityVerdict, check_admissibility
from app.adversary.events import (
    AdmissibilityScope,
    AdversarySpec,
    InjectionEvent,
    InjectionStrategy,
)
from app.adversary.scripts import ScriptedScenario, script_sis_reactive_instability, script_tie_blocking
from app.adversary.stochastic import simple_path_pool
from app.analysis.stability import (
    BoundReport,
    Growth,
    InstabilityVerdict,
    bound_parameters_for,
    check_bounds,
    detect_instability,
)
from app.analysis.wireline import InjectionFlow, expand_flows
from app.config import settings
from app.engine.config import ExecutionConfig, HearingMode, SuccessModel
from app.engine.orchestrator import run
from app.exceptions import ScenarioValidationError
from app.models.network import NetworkGraph
from app.models.trace import ExecutionTrace
from app.oracles.certification import certify_link_latency, certify_node_latency
from app.oracles.schedules import OracleSchedule, RegularityClass, periodic_link_schedule
from app.oracles.transmitters import TransmitterArray
from app.scheduling.policies import PolicyId
from app.scheduling.ties import TieBreakMode
from app.schemas.reports import CheckResult, RunVerdicts
from app.schemas.scenario import (
    OracleSection,
    ScenarioFile,
    TieSection,
    WirelineScenarioFile,
)
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

AnyScenario = Union[ScenarioFile, WirelineScenarioFile]


@dataclass
class PreparedScenario:
    scenario: ScenarioFile
    config: ExecutionConfig
    checkpoints: list[int]
    generated: Optional[ScriptedScenario] = None


@dataclass
class RunResult:
    scenario: ScenarioFile
    config: ExecutionConfig
    trace: ExecutionTrace
    verdicts: RunVerdicts
    bound_report: Optional[BoundReport] = None
    instability: Optional[InstabilityVerdict] = None
    admissibility: Optional[AdmissibilityVerdict] = None
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdicts.passed


def _yaml_line(root: yaml.Node | None, loc: tuple) -> int | None:
    """1-based line of the YAML node addressed by a pydantic error location."""
    if root is None:
        return None
    node, line = root, root.start_mark.line + 1
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            match = next((pair for pair in node.value if pair[0].value == str(key)), None)
            if match is None:
                break
            line = match[0].start_mark.line + 1
            node = match[1]
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
            line = node.start_mark.line + 1
        else:
            break
    return line


def tie_mode_from(section: TieSection, seed: int, choices: Optional[dict] = None) -> TieBreakMode:
    if section.mode == "permanent":
        return TieBreakMode.permanent(section.order_rule, seed=seed)
    scripted = {(c.node, c.round): c.packet for c in section.choices} or dict(choices or {})
    return TieBreakMode.arbitrary(section.strategy, seed=seed, choices=scripted)


class ScenarioService:
    """Service for loading, building and running scenario documents."""

    def parse(self, text: str, source: str = "<document>") -> AnyScenario:
        """Parse and validate a YAML scenario; errors carry the offending line."""
        try:
            root = yaml.compose(text)
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            raise ScenarioValidationError(
                f"{source}: invalid YAML: {getattr(exc, 'problem', exc)}",
                line=mark.line + 1 if mark else None,
            ) from exc

        if not isinstance(data, dict):
            raise ScenarioValidationError(f"{source}: scenario must be a mapping", line=1)

        model = WirelineScenarioFile if data.get("kind") == "wireline" else ScenarioFile
        try:
            return model.model_validate(data)
        except ValidationError as exc:
            error = exc.errors()[0]
            where = ".".join(str(part) for part in error["loc"]) or "<root>"
            raise ScenarioValidationError(
                f"{source}: {where}: {error['msg']}", line=_yaml_line(root, error["loc"])
            ) from exc

    def load(self, path: Path) -> AnyScenario:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ScenarioValidationError(f"cannot read {path}: {exc.strerror}") from exc
        return self.parse(text, source=str(path))

    def build(
        self, scenario: ScenarioFile, seed: Optional[int] = None, horizon: Optional[int] = None
    ) -> PreparedScenario:
        """Turn a validated document into an execution config."""
        seed = seed if seed is not None else scenario.run.seed
        seed = seed if seed is not None else settings.DEFAULT_SEED
        adv = scenario.adversary
        protocol = scenario.protocol

        generated = None
        if scenario.generator is not None:
            gen = scenario.generator
            if gen.kind == "sis_reactive_instability":
                generated = script_sis_reactive_instability(gen.k, gen.iterations, burst=gen.burst)
            else:
                generated = script_tie_blocking(gen.rounds)
            graph = generated.graph
        else:
            graph = NetworkGraph.from_edges(scenario.graph.nodes, scenario.graph.edges)

        if horizon is None:
            horizon = scenario.run.horizon
        if horizon is None:
            horizon = generated.horizon if generated else settings.DEFAULT_HORIZON

        explicit = adv.model_fields_set
        rate = Fraction(adv.rate)
        burstiness = adv.burstiness
        scope = AdmissibilityScope(adv.scope)
        if generated is not None:
            rate = rate if "rate" in explicit else generated.rate
            burstiness = burstiness if "burstiness" in explicit else generated.burstiness
            scope = scope if "scope" in explicit else generated.scope

        adversary_seed = adv.seed if adv.seed is not None else seed
        if adv.strategy == "stochastic":
            pool = adv.paths if adv.paths else simple_path_pool(graph, adv.max_hops or 2)
            adversary = AdversarySpec(
                rate=rate,
                burstiness=burstiness,
                strategy=InjectionStrategy.STOCHASTIC,
                seed=adversary_seed,
                path_pool=tuple(tuple(p) for p in pool),
                intensity=adv.intensity,
                scope=scope,
            )
        else:
            events = [InjectionEvent(round=r.round, itinerary=tuple(r.itinerary)) for r in adv.script]
            flows = [InjectionFlow(tuple(f.path), f.start, f.every, f.count) for f in adv.flows]
            events += [InjectionEvent(round=i.round, itinerary=i.path) for i in expand_flows(flows, horizon)]
            if generated is not None:
                events = list(generated.events) + events
            adversary = AdversarySpec(
                rate=rate,
                burstiness=burstiness,
                strategy=InjectionStrategy.SCRIPTED,
                seed=adversary_seed,
                script=tuple(sorted(events, key=lambda e: e.round)),
                scope=scope,
            )

        if generated is not None and protocol.oracle.mode == "scripted" and not protocol.oracle.schedule:
            oracle = generated.oracle
        else:
            oracle = self._oracle(protocol.oracle, graph, seed)

        tie = tie_mode_from(protocol.tie, seed, generated.tie_choices if generated else None)

        checkpoints = list(scenario.run.checkpoints)
        if not checkpoints and scenario.run.checkpoint_every:
            checkpoints = list(range(0, horizon, scenario.run.checkpoint_every))
        if not checkpoints and generated is not None:
            checkpoints = list(generated.checkpoints)
        if not checkpoints and horizon > 0:
            checkpoints = sorted({int(c) for c in np.linspace(0, horizon - 1, num=10)})
        checkpoints = [c for c in checkpoints if c < horizon]

        config = ExecutionConfig(
            graph=graph,
            adversary=adversary,
            policy=PolicyId(protocol.policy),
            tie=tie,
            oracle=oracle,
            hearing=HearingMode(protocol.hearing),
            success=SuccessModel(protocol.success),
            horizon=horizon,
            seed=seed,
            label=scenario.name,
        )
        config.validate()
        return PreparedScenario(scenario=scenario, config=config, checkpoints=checkpoints, generated=generated)

    def _oracle(self, section: OracleSection, graph: NetworkGraph, seed: int) -> OracleSchedule:
        regularity = RegularityClass.REGULAR if section.regular else RegularityClass.LINK_LATENCY_ONLY
        if section.mode == "scripted":
            records = {rec.round: rec.up for rec in section.schedule}
            permitted = {rec.round: rec.permitted for rec in section.schedule if rec.permitted}
            return OracleSchedule.scripted(
                graph.node_count,
                records,
                period=section.period,
                latency=section.latency,
                regularity=regularity,
                permitted=permitted,
            )
        if section.mode == "periodic":
            return periodic_link_schedule(graph, section.h, seed)
        if section.mode == "work_conserving":
            return OracleSchedule.work_conserving(graph.node_count)
        if section.mode == "round_robin":
            return OracleSchedule.round_robin(graph.node_count)

        array = TransmitterArray.from_rows(section.rows)
        if array.node_count != graph.node_count:
            raise ScenarioValidationError(
                f"transmitter has {array.node_count} rows for {graph.node_count} nodes"
            )
        return OracleSchedule.from_transmitter(array)

    def run(
        self, scenario: ScenarioFile, seed: Optional[int] = None, horizon: Optional[int] = None
    ) -> RunResult:
        """Run a scenario and every analysis it requests."""
        prepared = self.build(scenario, seed=seed, horizon=horizon)
        config = prepared.config
        logger.info(
            f"Running scenario {scenario.name}: {config.policy.value}/{config.hearing.value}/"
            f"{config.success.value}, {config.horizon} rounds, seed {config.seed}"
        )
        trace = run(config)
        return self.analyze(prepared, trace)

    def analyze(self, prepared: PreparedScenario, trace: ExecutionTrace) -> RunResult:
        scenario, config = prepared.scenario, prepared.config
        analysis = scenario.analysis
        checks: list[CheckResult] = []
        result_extras: dict[str, Any] = {}
        bound_report = instability = admissibility = None

        if analysis.admissibility:
            realized = [
                InjectionEvent(round=p.injection_round, itinerary=p.itinerary)
                for p in trace.packets.values()
            ]
            admissibility = check_admissibility(
                realized,
                config.adversary.rate,
                config.adversary.burstiness,
                max(config.horizon - 1, 0),
                scope=config.adversary.scope,
            )
            checks.append(
                CheckResult(
                    name="admissibility",
                    ok=admissibility.ok,
                    detail={
                        "rate": str(admissibility.rate),
                        "burstiness": admissibility.burstiness,
                        "scope": admissibility.scope.value,
                        "interval": admissibility.interval,
                        "key": admissibility.key,
                        "approximate": admissibility.approximate,
                    },
                )
            )

        if analysis.bounds:
            h = analysis.h or config.claimed_latency
            if h is None:
                raise ScenarioValidationError("bounds need analysis.h or an oracle latency claim")
            params = bound_parameters_for(
                config.graph,
                config.adversary.burstiness,
                config.adversary.rate,
                h,
                exhaustive=analysis.exhaustive_paths,
            )
            bound_report = check_bounds(trace, config.policy.value, params)
            checks.append(CheckResult(name="bounds", ok=bound_report.ok, detail=bound_report.to_record()))

        # Unless given explicitly, latencies are certified at the oracle's own claim.
        claimed = config.claimed_latency
        claimed_node = claimed if config.claims_regular else None
        for name, given, default, certify in (
            ("link_latency", analysis.link_latency, claimed, certify_link_latency),
            ("node_latency", analysis.node_latency, claimed_node, certify_node_latency),
        ):
            h = given or default
            if h is None:
                continue
            verdict = certify(trace, h)
            checks.append(
                CheckResult(
                    name=name,
                    ok=verdict.ok,
                    detail={
                        "h": h,
                        "claimed": given is None,
                        "violation": verdict.violation,
                        "skipped": verdict.skipped,
                    },
                )
            )

        observed = None
        if (analysis.instability or scenario.expect) and len(prepared.checkpoints) >= 3:
            instability = detect_instability(trace, prepared.checkpoints)
            result_extras["instability"] = instability.to_record()
            if instability.zero_throughput:
                observed = "blocked"
            elif instability.verdict == Growth.GROWTH:
                observed = "growth"
            elif instability.verdict == Growth.BOUNDED:
                observed = "stable"
            else:
                observed = "inconclusive"
            if analysis.instability:
                checks.append(
                    CheckResult(
                        name="instability",
                        ok=scenario.expect is not None or instability.verdict != Growth.GROWTH,
                        detail=instability.to_record(),
                    )
                )

        if scenario.expect is not None:
            checks.append(
                CheckResult(
                    name="expectation",
                    ok=observed == scenario.expect,
                    detail={"expect": scenario.expect, "observed": observed},
                )
            )

        verdicts = RunVerdicts(
            scenario=scenario.name,
            expect=scenario.expect,
            observed=observed,
            passed=all(check.ok for check in checks),
            seed=config.seed,
            horizon=config.horizon,
            injected=trace.injected,
            delivered=trace.delivered,
            max_queue=trace.max_queue(),
            checks=checks,
        )
        logger.info(
            f"Scenario {scenario.name}: {'PASS' if verdicts.passed else 'FAIL'} "
            f"({', '.join(f'{c.name}={c.ok}' for c in checks) or 'no checks'})"
        )
        return RunResult(
            scenario=scenario,
            config=config,
            trace=trace,
            verdicts=verdicts,
            bound_report=bound_report,
            instability=instability,
            admissibility=admissibility,
            extras=result_extras,
        )
