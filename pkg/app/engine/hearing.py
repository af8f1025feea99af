from typing import Sequence

from app.engine.config import SuccessModel
from app.models.network import NetworkGraph
from app.models.packet import Packet
from app.oracles.schedules import Indication
from app.scheduling.policies import Scheduler


def hearable_neighbors(
    node: int,
    success: SuccessModel,
    graph: NetworkGraph,
    indication: Indication,
    contenders: frozenset[int],
) -> frozenset[int]:
    """Neighbours the handshake reports as able to hear ``node`` this round.

    Under radio collisions every contender (a permitted node holding an eligible packet)
    is assumed to transmit.
    """
    if success == SuccessModel.SCRIPTED_LINKS:
        return frozenset(w for u, w in indication.up_links or () if u == node)
    if success == SuccessModel.INTERFERENCE_FREE:
        return graph.neighbor_sets[node]
    return frozenset(
        w
        for w in graph.adjacency[node]
        if w not in contenders
        and not any(u != node and u in contenders for u in graph.adjacency[w])
    )


def proactive_phase(
    node: int,
    hearable: frozenset[int],
    queue: Sequence[Packet],
    scheduler: Scheduler,
    round_: int,
) -> Packet | None:
    """Select among packets whose next hop will hear; None means the node pauses."""
    candidates = [p for p in queue if p.next_hop in hearable]
    return scheduler.select(node, candidates, round_, hearable)


def reactive_phase(
    node: int,
    queue: Sequence[Packet],
    scheduler: Scheduler,
    round_: int,
    open_next_hops: frozenset[int] = frozenset(),
) -> Packet | None:
    """Select over the whole queue; success is learned afterwards."""
    return scheduler.select(node, queue, round_, open_next_hops)
