from dataclasses import dataclass, field
from typing import Sequence

from app.engine.config import SuccessModel
from app.models.network import Link, NetworkGraph
from app.models.packet import Packet
from app.models.trace import HeardEvent
from app.oracles.schedules import Indication


@dataclass(frozen=True)
class Transmission:
    node: int
    packet: Packet
    recipient: int


@dataclass
class Resolution:
    heard: list[HeardEvent] = field(default_factory=list)
    succeeded: set[int] = field(default_factory=set)
    collisions: list[int] = field(default_factory=list)


def resolve_success(
    transmissions: Sequence[Transmission],
    success: SuccessModel,
    graph: NetworkGraph,
    indication: Indication,
) -> Resolution:
    """Who hears what this round.

    Only the intended recipient acts on a heard packet; other hearers are recorded with
    ``intended=False`` and discard it.
    """
    resolution = Resolution()

    if success == SuccessModel.SCRIPTED_LINKS:
        up = indication.up_links or frozenset()
        for t in transmissions:
            if (t.node, t.recipient) in up:
                resolution.heard.append(HeardEvent(t.recipient, t.node, t.packet.id, True))
                resolution.succeeded.add(t.node)
        return resolution

    if success == SuccessModel.INTERFERENCE_FREE:
        for t in transmissions:
            resolution.heard.append(HeardEvent(t.recipient, t.node, t.packet.id, True))
            resolution.succeeded.add(t.node)
        return resolution

    # Radio collisions, half-duplex: a transmitter hears nothing in its own round.
    by_node = {t.node: t for t in transmissions}
    for receiver in range(graph.node_count):
        if receiver in by_node:
            continue
        senders = [v for v in graph.adjacency[receiver] if v in by_node]
        if len(senders) == 1:
            t = by_node[senders[0]]
            intended = t.recipient == receiver
            resolution.heard.append(HeardEvent(receiver, t.node, t.packet.id, intended))
            if intended:
                resolution.succeeded.add(t.node)
        elif len(senders) > 1:
            resolution.collisions.append(receiver)
    return resolution


def open_links(
    success: SuccessModel,
    graph: NetworkGraph,
    indication: Indication,
    transmitters: frozenset[int],
) -> tuple[Link, ...]:
    """Links a transmission would have crossed successfully this round."""
    if success == SuccessModel.SCRIPTED_LINKS:
        return tuple(sorted(indication.up_links or ()))

    links = []
    for v in sorted(indication.permitted):
        for w in graph.adjacency[v]:
            if success == SuccessModel.RADIO_COLLISION:
                if w in transmitters:
                    continue
                if any(u != v and u in transmitters for u in graph.adjacency[w]):
                    continue
            links.append((v, w))
    return tuple(links)
