"""Randomized campaigns: observed queues and delays stay within the closed-form bounds."""

from fractions import Fraction

import numpy as np
import pytest

from app.adversary.admissibility import check_admissibility
from app.adversary.events import AdversarySpec, InjectionEvent, InjectionStrategy
from app.adversary.stochastic import simple_path_pool
from app.analysis.stability import Growth, bound_parameters_for, check_bounds, detect_instability
from app.engine.config import ExecutionConfig, HearingMode, SuccessModel
from app.engine.orchestrator import run
from app.models.network import NetworkGraph
from app.models.trace import ExecutionTrace
from app.oracles.certification import certify_link_latency
from app.oracles.schedules import OracleSchedule, periodic_link_schedule
from app.scheduling.policies import PolicyId
from app.scheduling.ties import TieBreakMode

CAMPAIGN_GRAPHS = [
    (4, [(0, 1), (1, 2), (2, 3)]),
    (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    (5, [(0, 1), (0, 2), (0, 3), (3, 4)]),
    (6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]),
    (5, [(0, 1), (1, 2), (1, 3), (3, 4)]),
    (3, [(0, 1), (1, 2), (2, 0)]),
]
HORIZON = 300


def injected_events(trace: ExecutionTrace) -> list[InjectionEvent]:
    return [
        InjectionEvent(round=p.injection_round, itinerary=p.itinerary)
        for p in sorted(trace.packets.values(), key=lambda p: p.id)
    ]


def campaign_config(seed: int, policy: str, hearing: HearingMode, tie: TieBreakMode) -> tuple:
    rng = np.random.default_rng(seed)
    nodes, edges = CAMPAIGN_GRAPHS[seed % len(CAMPAIGN_GRAPHS)]
    graph = NetworkGraph.from_edges(nodes, edges)

    choices = [h for h in (2, 3, 4) if h >= graph.max_degree]
    h = choices[int(rng.integers(len(choices)))]
    b = int(rng.integers(1, 4))
    r = Fraction(1, h + int(rng.integers(1, 4)))
    intensity = float(rng.choice([0.5, 1.0]))

    config = ExecutionConfig(
        graph=graph,
        adversary=AdversarySpec(
            rate=r,
            burstiness=b,
            strategy=InjectionStrategy.STOCHASTIC,
            seed=seed,
            path_pool=simple_path_pool(graph, graph.node_count - 1),
            intensity=intensity,
        ),
        policy=PolicyId(policy),
        tie=tie,
        oracle=periodic_link_schedule(graph, h, seed=seed),
        hearing=hearing,
        success=SuccessModel.SCRIPTED_LINKS,
        horizon=HORIZON,
        seed=seed,
    )
    return config, bound_parameters_for(graph, b, r, h)


def assert_within_bounds(config: ExecutionConfig, params, policy: str):
    trace = run(config)
    admissibility = check_admissibility(
        injected_events(trace), params.r, params.b, config.horizon, config.adversary.scope
    )
    assert admissibility.ok
    assert certify_link_latency(trace, params.h).ok

    report = check_bounds(trace, policy, params)
    assert report.queue_ok, report.to_record()
    assert report.delay_ok, report.to_record()


@pytest.mark.parametrize("seed", range(100))
def test_sis_proactive_within_bounds(seed):
    config, params = campaign_config(
        seed, "SIS", HearingMode.PROACTIVE, TieBreakMode.arbitrary("seeded_random", seed=seed)
    )
    assert_within_bounds(config, params, "SIS")


@pytest.mark.parametrize("seed", range(100))
def test_lis_proactive_within_bounds(seed):
    config, params = campaign_config(
        seed, "LIS", HearingMode.PROACTIVE, TieBreakMode.arbitrary("seeded_random", seed=seed)
    )
    assert_within_bounds(config, params, "LIS")


@pytest.mark.parametrize("seed", range(50))
@pytest.mark.parametrize("order_rule", ["fixed_id", "random_rank"])
def test_lis_reactive_permanent_within_bounds(seed, order_rule):
    config, params = campaign_config(
        seed, "LIS", HearingMode.REACTIVE, TieBreakMode.permanent(order_rule, seed=seed)
    )
    assert_within_bounds(config, params, "LIS")


@pytest.mark.parametrize("seed", range(50))
@pytest.mark.parametrize("policy", ["SIS", "LIS"])
def test_round_robin_reactive_is_bounded(seed, policy):
    nodes, edges = CAMPAIGN_GRAPHS[seed % len(CAMPAIGN_GRAPHS)]
    graph = NetworkGraph.from_edges(nodes, edges)
    config = ExecutionConfig(
        graph=graph,
        adversary=AdversarySpec(
            rate=Fraction(1, 2 * nodes),
            burstiness=6,
            strategy=InjectionStrategy.STOCHASTIC,
            seed=seed,
            path_pool=simple_path_pool(graph, nodes - 1),
        ),
        policy=PolicyId(policy),
        tie=TieBreakMode.arbitrary("seeded_random", seed=seed),
        oracle=OracleSchedule.round_robin(nodes),
        hearing=HearingMode.REACTIVE,
        success=SuccessModel.RADIO_COLLISION,
        horizon=600,
        seed=seed,
    )
    trace = run(config)
    verdict = detect_instability(trace, range(0, 600, 50))
    assert verdict.verdict == Growth.BOUNDED, verdict.to_record()
