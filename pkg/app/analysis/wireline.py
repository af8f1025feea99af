from dataclasses import dataclass, field
from typing import Sequence

from app.exceptions import ScenarioValidationError
from app.models.network import WirelineGraph
from app.models.packet import Packet
from app.scheduling.policies import PolicyId, Scheduler
from app.scheduling.ties import TieBreaker, TieBreakMode
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

Stay = tuple[int, int, int | None]


@dataclass(frozen=True)
class WirelineInjection:
    round: int
    path: tuple[int, ...]


@dataclass(frozen=True)
class InjectionFlow:
    """Periodic injections along one path: rounds start, start+every, ... (``count`` of them)."""

    path: tuple[int, ...]
    start: int = 0
    every: int = 1
    count: int | None = None

    def rounds(self, horizon: int) -> range:
        stop = horizon if self.count is None else min(horizon, self.start + self.count * self.every)
        return range(self.start, stop, self.every)


def expand_flows(flows: Sequence[InjectionFlow], horizon: int) -> list[WirelineInjection]:
    """Flows as individual injections, ordered by round then by flow."""
    expanded = [
        (round_, index, WirelineInjection(round=round_, path=flow.path))
        for index, flow in enumerate(flows)
        for round_ in flow.rounds(horizon)
    ]
    return [item for _, _, item in sorted(expanded, key=lambda x: (x[0], x[1]))]


@dataclass
class WirelineTrace:
    graph: WirelineGraph
    horizon: int
    policy: str
    seed: int
    injection_rounds: dict[int, int] = field(default_factory=dict)
    timelines: dict[int, list[Stay]] = field(default_factory=dict)
    queue_sizes: list[tuple[int, ...]] = field(default_factory=list)

    def q_series(self) -> list[int]:
        return [sum(sizes) for sizes in self.queue_sizes]


def run_wireline(
    graph: WirelineGraph,
    injections: Sequence[WirelineInjection],
    policy: PolicyId,
    tie: TieBreakMode,
    horizon: int,
    seed: int = 0,
) -> WirelineTrace:
    """Reference wireline execution: a queue per link, one packet per link per round.

    Uses the same scheduling and eligibility rules as the radio engine; the tie-breaker
    sees link indices as node names.
    """
    scheduler = Scheduler(policy, TieBreaker(tie))
    by_round: dict[int, list[WirelineInjection]] = {}
    for injection in sorted(injections, key=lambda i: i.round):
        if len(injection.path) < 2:
            raise ScenarioValidationError(f"wireline path {list(injection.path)} has no link")
        graph.path_links(injection.path)
        by_round.setdefault(injection.round, []).append(injection)

    queues: list[list[Packet]] = [[] for _ in graph.links]
    packets: list[Packet] = []
    trace = WirelineTrace(graph=graph, horizon=horizon, policy=PolicyId(policy).value, seed=seed)

    def link_of(packet: Packet) -> int:
        return graph.link_index[(packet.current_node, packet.next_hop)]

    for round_ in range(horizon):
        for injection in by_round.get(round_, []):
            packet = Packet(id=len(packets), injection_round=round_, itinerary=injection.path)
            packets.append(packet)
            queues[link_of(packet)].append(packet)

        chosen: list[tuple[int, Packet]] = []
        for link, queue in enumerate(queues):
            ready = [p for p in queue if p.eligible(round_)]
            packet = scheduler.select(link, ready, round_)
            if packet is not None:
                chosen.append((link, packet))

        for link, packet in chosen:
            queues[link].remove(packet)
            scheduler.tie.forget(link, packet.id)
            packet.advance(round_)
            if not packet.delivered:
                queues[link_of(packet)].append(packet)

        trace.queue_sizes.append(tuple(len(queue) for queue in queues))

    for packet in packets:
        trace.injection_rounds[packet.id] = packet.injection_round
        trace.timelines[packet.id] = _timeline(graph, packet)

    logger.debug(f"Wireline run: {len(packets)} packets over {horizon} rounds")
    return trace


def _timeline(graph: WirelineGraph, packet: Packet) -> list[Stay]:
    stays: list[Stay] = []
    path = packet.itinerary
    for i in range(min(len(packet.arrival_rounds), len(path) - 1)):
        leave = packet.arrival_rounds[i + 1] if i + 1 < len(packet.arrival_rounds) else None
        stays.append((graph.link_index[(path[i], path[i + 1])], packet.arrival_rounds[i], leave))
    return stays
