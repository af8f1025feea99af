from fractions import Fraction

import pytest

from app.adversary.events import AdversarySpec
from app.adversary.scripts import script_sis_reactive_instability, script_tie_blocking
from app.analysis.bounds import BoundParameters
from app.analysis.stability import (
    Growth,
    bound_parameters_for,
    check_bounds,
    detect_instability,
)
from app.engine.config import ExecutionConfig, HearingMode, SuccessModel
from app.engine.orchestrator import run
from app.models.trace import ExecutionTrace, PacketRecord, RoundRecord
from app.scheduling.policies import PolicyId
from app.scheduling.ties import TieBreakMode


def synthetic_trace(series, delivered=True) -> ExecutionTrace:
    trace = ExecutionTrace(
        node_count=1, horizon=len(series), seed=0, policy="FIFO", hearing="reactive",
        success="radio_collision", oracle="work_conserving",
    )
    trace.rounds = [
        RoundRecord(
            round=t, permitted=(), attempts=(), heard=(), collisions=(),
            queue_sizes=(q,), q_total=q, injections=(), deliveries=(),
        )
        for t, q in enumerate(series)
    ]
    trace.packets = {
        0: PacketRecord(
            id=0, injection_round=0, itinerary=(0, 1),
            arrival_rounds=(0, 1) if delivered else (0,),
            delivery_round=1 if delivered else None,
        )
    }
    return trace


def generated_config(generated, policy="SIS", tie=None, horizon=None) -> ExecutionConfig:
    return ExecutionConfig(
        graph=generated.graph,
        adversary=AdversarySpec(
            rate=generated.rate, burstiness=generated.burstiness, script=generated.events
        ),
        policy=PolicyId(policy),
        tie=tie or TieBreakMode.arbitrary("fixed_id"),
        oracle=generated.oracle,
        hearing=HearingMode.REACTIVE,
        success=SuccessModel.SCRIPTED_LINKS,
        horizon=horizon or generated.horizon,
    )


class TestDetectInstability:
    def test_linear_growth(self):
        verdict = detect_instability(synthetic_trace(list(range(100))), [10, 40, 70, 99])
        assert verdict.verdict == Growth.GROWTH
        assert verdict.slope == pytest.approx(1.0)
        assert verdict.values == (10, 40, 70, 99)

    def test_flat_is_bounded(self):
        verdict = detect_instability(synthetic_trace([3] * 50), [0, 10, 20, 30, 40])
        assert verdict.verdict == Growth.BOUNDED

    def test_slow_growth_under_threshold(self):
        series = [t // 20 for t in range(100)]
        verdict = detect_instability(synthetic_trace(series), [0, 20, 40, 60, 80], slope_threshold=0.1)
        assert verdict.verdict == Growth.INCONCLUSIVE

    def test_late_bump_inconclusive(self):
        series = [1] * 50 + [5] * 10 + [1] * 40
        verdict = detect_instability(synthetic_trace(series), [0, 20, 40, 55, 90])
        assert verdict.verdict == Growth.INCONCLUSIVE

    def test_zero_throughput(self):
        verdict = detect_instability(synthetic_trace([1] * 10, delivered=False), [0, 4, 8])
        assert verdict.zero_throughput
        assert verdict.to_record()["delivered"] == 0

    def test_needs_three_checkpoints_inside_trace(self):
        trace = synthetic_trace([0] * 10)
        with pytest.raises(ValueError):
            detect_instability(trace, [1, 2])
        with pytest.raises(ValueError):
            detect_instability(trace, [1, 2, 10])

    def test_repeated_checkpoints_count_once(self):
        trace = synthetic_trace(list(range(10)))
        with pytest.raises(ValueError):
            detect_instability(trace, [5, 5, 5])
        verdict = detect_instability(trace, [9, 0, 0, 4, 9, 4])
        assert verdict.checkpoints == (0, 4, 9)
        assert verdict.values == (0, 4, 9)

    def test_instability_script_grows_by_burst(self):
        generated = script_sis_reactive_instability(k=4, iterations=10)
        trace = run(generated_config(generated))
        verdict = detect_instability(trace, generated.checkpoints)
        assert verdict.verdict == Growth.GROWTH
        assert list(verdict.values) == [4 * (i + 1) for i in range(10)]
        assert verdict.checkpoint_slope == pytest.approx(4.0)

    def test_blocked_pair_is_bounded_without_throughput(self):
        generated = script_tie_blocking(1000)
        tie = TieBreakMode.arbitrary("scripted", choices=generated.tie_choices)
        trace = run(generated_config(generated, policy="LIS", tie=tie))
        assert set(trace.q_series()) == {2}
        verdict = detect_instability(trace, range(0, 1000, 100))
        assert verdict.verdict == Growth.BOUNDED
        assert verdict.zero_throughput


class TestCheckBounds:
    def test_parameters_count_absorbing_queue(self, path4):
        params = bound_parameters_for(path4, 2, Fraction(1, 4), 3)
        assert params == BoundParameters(b=2, r=Fraction(1, 4), h=3, d=4)

    def test_empty_trace_passes(self):
        trace = ExecutionTrace(
            node_count=2, horizon=0, seed=0, policy="LIS", hearing="proactive",
            success="scripted_links", oracle="scripted",
        )
        report = check_bounds(trace, "LIS", BoundParameters.of(1, 0, 1, 2))
        assert report.ok
        assert report.observed_max_queue == 0

    def test_undelivered_packets_count_their_age(self):
        trace = synthetic_trace([1] * 30, delivered=False)
        report = check_bounds(trace, "LIS", BoundParameters.of(1, 0, 1, 2))
        assert report.observed_max_delay == 30
        assert not report.delay_ok

    def test_reactive_sis_instability_breaks_bounds(self):
        generated = script_sis_reactive_instability(k=4, iterations=90)
        trace = run(generated_config(generated))
        params = bound_parameters_for(generated.graph, generated.burstiness, generated.rate, 6)
        report = check_bounds(trace, "SIS", params)
        assert params.d == 3
        assert report.queue_packets == 144
        assert report.observed_max_queue > report.queue_packets
        assert not report.ok
