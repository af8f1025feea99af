from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from app.adversary.events import InjectionEvent
from app.analysis.wireline import Stay, WirelineInjection, WirelineTrace
from app.exceptions import PreconditionError
from app.models.network import Link, NetworkGraph, WirelineGraph
from app.models.trace import ExecutionTrace
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class EquivalenceMap:
    """Link i of the wireline graph is node i of the radio graph; packets keep their ids."""

    links: tuple[Link, ...]

    def node_of(self, link: Link) -> int:
        return self.links.index(link)

    def link_of(self, node: int) -> Link:
        return self.links[node]

    def to_record(self) -> dict:
        return {"nodes": {str(i): list(link) for i, link in enumerate(self.links)}}


@dataclass(frozen=True)
class EquivalenceVerdict:
    ok: bool
    packets_checked: int
    rounds_checked: int
    divergence: tuple[int, Link] | None = None
    packet: int | None = None


def equivalent_network(graph: WirelineGraph) -> tuple[NetworkGraph, EquivalenceMap]:
    """Radio graph with a node per link, joining links that compose head to tail."""
    if not graph.links:
        raise PreconditionError("wireline graph has no links")

    mapping = EquivalenceMap(links=graph.links)
    index = graph.link_index
    line = nx.line_graph(graph.to_networkx())
    edges = {
        (min(index[e], index[f]), max(index[e], index[f])) for e, f in line.edges() if e != f
    }
    radio = NetworkGraph.from_edges(len(graph.links), sorted(edges))
    logger.debug(f"Equivalent network: {len(graph.links)} nodes, {len(edges)} edges")
    return radio, mapping


def absorbing_node(graph: WirelineGraph, mapping: EquivalenceMap, path: Sequence[int]) -> int:
    """Equivalent node of the first outgoing link at the path's last node."""
    out = graph.out_links(path[-1])
    if not out:
        raise PreconditionError(
            f"path {list(path)} ends at node {path[-1]}, which has no outgoing link to absorb at"
        )
    return mapping.node_of(out[0])


def transform_injections(
    graph: WirelineGraph, mapping: EquivalenceMap, injections: Sequence[WirelineInjection]
) -> list[InjectionEvent]:
    """Replace each link of a wireline path by its equivalent node, then append the absorbing node."""
    events = []
    for injection in sorted(injections, key=lambda i: i.round):
        nodes = [mapping.node_of(graph.links[i]) for i in graph.path_links(injection.path)]
        nodes.append(absorbing_node(graph, mapping, injection.path))
        events.append(InjectionEvent(round=injection.round, itinerary=tuple(nodes)))
    return events


def compare_equivalent_traces(
    wireline: WirelineTrace, radio: ExecutionTrace, mapping: EquivalenceMap
) -> EquivalenceVerdict:
    """Check that every packet sits in equivalent queues during the same rounds."""
    problems = []
    if radio.oracle != "work_conserving":
        problems.append(f"radio oracle is {radio.oracle}, not work_conserving")
    if radio.success != "interference_free":
        problems.append(f"radio success model is {radio.success}, not interference_free")
    if radio.policy != wireline.policy:
        problems.append(f"policies differ: {wireline.policy} vs {radio.policy}")
    if radio.horizon != wireline.horizon:
        problems.append(f"horizons differ: {wireline.horizon} vs {radio.horizon}")
    if radio.node_count != len(mapping.links):
        problems.append(f"radio graph has {radio.node_count} nodes for {len(mapping.links)} links")
    if problems:
        raise PreconditionError("; ".join(problems))

    radio_stays = {pid: record.residence() for pid, record in radio.packets.items()}
    first: tuple[int, Link, int] | None = None

    for pid in sorted(set(wireline.timelines) | set(radio_stays)):
        found = _first_mismatch(wireline.timelines.get(pid), radio_stays.get(pid))
        if found is None:
            continue
        round_, node = found
        candidate = (round_, mapping.link_of(node), pid)
        if first is None or candidate[0] < first[0]:
            first = candidate

    checked = len(wireline.timelines)
    if first is None:
        return EquivalenceVerdict(ok=True, packets_checked=checked, rounds_checked=wireline.horizon)

    logger.info(f"Equivalence diverges at round {first[0]} in queue {first[1]} (packet {first[2]})")
    return EquivalenceVerdict(
        ok=False,
        packets_checked=checked,
        rounds_checked=wireline.horizon,
        divergence=(first[0], first[1]),
        packet=first[2],
    )


def _first_mismatch(
    wired: list[Stay] | None, radio: list[tuple[int, int, int | None]] | None
) -> tuple[int, int] | None:
    """(round, queue) where the two stay lists first disagree, queue named by link index."""
    if wired is None or radio is None:
        present = wired or radio
        if not present:
            return None
        queue, arrival, _ = present[0]
        return arrival, queue

    for i in range(max(len(wired), len(radio))):
        if i >= len(wired) or i >= len(radio):
            queue, arrival, _ = (radio if i >= len(wired) else wired)[i]
            return arrival, queue
        (q1, a1, l1), (q2, a2, l2) = wired[i], radio[i]
        if q1 != q2 or a1 != a2:
            return min(a1, a2), q1
        if l1 != l2:
            return min(x for x in (l1, l2) if x is not None), q1
    return None
