from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from app.analysis.bounds import BoundParameters, bounds_for
from app.config import settings
from app.models.network import NetworkGraph, longest_simple_path_length
from app.models.trace import ExecutionTrace
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class BoundReport:
    policy: str
    params: BoundParameters
    queue_bound: Fraction
    delay_bound: Fraction
    queue_packets: int
    observed_max_queue: int
    observed_max_delay: int
    queue_ok: bool
    delay_ok: bool
    worst_packet: int | None = None

    @property
    def ok(self) -> bool:
        return self.queue_ok and self.delay_ok

    def to_record(self) -> dict:
        return {
            "policy": self.policy,
            "b": self.params.b,
            "r": str(self.params.r),
            "h": self.params.h,
            "d": self.params.d,
            "queue_bound": str(self.queue_bound),
            "queue_bound_float": float(self.queue_bound),
            "queue_packets": self.queue_packets,
            "delay_bound": str(self.delay_bound),
            "delay_bound_float": float(self.delay_bound),
            "observed_max_queue": self.observed_max_queue,
            "observed_max_delay": self.observed_max_delay,
            "queue_ok": self.queue_ok,
            "delay_ok": self.delay_ok,
        }


def bound_parameters_for(
    graph: NetworkGraph, b: int, r: Fraction, h: int, exhaustive: bool = True
) -> BoundParameters:
    """Bound parameters for a graph; d counts the queues of the longest simple path,
    absorbing node included."""
    d = longest_simple_path_length(graph, exhaustive=exhaustive) + 1
    return BoundParameters.of(b, r, h, d)


def check_bounds(trace: ExecutionTrace, policy: str, params: BoundParameters) -> BoundReport:
    """Compare a trace's worst queue and worst delay with the policy's closed-form bounds.

    Undelivered packets count their age at the horizon.
    """
    bounds = bounds_for(policy, params.b, params.r, params.h, params.d)
    max_queue = trace.max_queue()

    worst_packet = None
    max_delay = 0
    for packet in trace.packets.values():
        delay = packet.delay(trace.horizon)
        if delay > max_delay:
            max_delay, worst_packet = delay, packet.id

    report = BoundReport(
        policy=bounds.policy,
        params=params,
        queue_bound=bounds.queue_bound,
        delay_bound=bounds.delay_bound,
        queue_packets=bounds.queue_packets,
        observed_max_queue=max_queue,
        observed_max_delay=max_delay,
        queue_ok=max_queue <= bounds.queue_packets,
        delay_ok=max_delay <= bounds.delay_bound,
        worst_packet=worst_packet,
    )
    if not report.ok:
        logger.info(
            f"{bounds.policy} bounds exceeded: queue {max_queue}/{bounds.queue_packets}, "
            f"delay {max_delay}/{float(bounds.delay_bound):.2f}"
        )
    return report


class Growth(str, Enum):
    GROWTH = "growth"
    BOUNDED = "bounded"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class InstabilityVerdict:
    verdict: Growth
    slope: float
    checkpoint_slope: float
    threshold: float
    checkpoints: tuple[int, ...]
    values: tuple[int, ...]
    injected: int
    delivered: int
    zero_throughput: bool

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "slope_per_round": self.slope,
            "slope_per_checkpoint": self.checkpoint_slope,
            "threshold": self.threshold,
            "checkpoints": list(self.checkpoints),
            "values": list(self.values),
            "injected": self.injected,
            "delivered": self.delivered,
            "zero_throughput": self.zero_throughput,
        }


def detect_instability(
    trace: ExecutionTrace,
    checkpoint_rounds: Sequence[int],
    slope_threshold: float | None = None,
) -> InstabilityVerdict:
    """Classify Q(t) at the checkpoints as growth, bounded or inconclusive.

    growth: strictly increasing with a least-squares slope (per round) above the threshold.
    bounded: the last half never exceeds the maximum of the first half.
    """
    checkpoints = sorted({int(c) for c in checkpoint_rounds})
    if len(checkpoints) < 3:
        raise ValueError(f"need at least 3 checkpoints, got {len(checkpoints)}")
    if checkpoints[-1] >= len(trace.rounds):
        raise ValueError(f"checkpoint {checkpoints[-1]} is past the trace ({len(trace.rounds)} rounds)")

    threshold = settings.GROWTH_SLOPE_THRESHOLD if slope_threshold is None else slope_threshold
    values = [trace.q_at(c) for c in checkpoints]

    slope = float(np.polyfit(np.array(checkpoints, dtype=float), np.array(values, dtype=float), 1)[0])
    checkpoint_slope = float(
        np.polyfit(np.arange(len(values), dtype=float), np.array(values, dtype=float), 1)[0]
    )

    increasing = all(a < b for a, b in zip(values, values[1:]))
    half = len(values) // 2
    if increasing and slope > threshold:
        verdict = Growth.GROWTH
    elif max(values[half:]) <= max(values[:half]):
        verdict = Growth.BOUNDED
    else:
        verdict = Growth.INCONCLUSIVE

    delivered = trace.delivered
    return InstabilityVerdict(
        verdict=verdict,
        slope=slope,
        checkpoint_slope=checkpoint_slope,
        threshold=threshold,
        checkpoints=tuple(checkpoints),
        values=tuple(values),
        injected=trace.injected,
        delivered=delivered,
        zero_throughput=trace.injected > 0 and delivered == 0,
    )
