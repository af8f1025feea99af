from dataclasses import dataclass

from app.models.network import Link
from app.models.trace import ExecutionTrace
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class LatencyVerdict:
    """Outcome of a hearing-latency certification.

    ``violation`` is the first (link or node, (first round, last round)) window that was
    ready throughout without being open. ``skipped`` counts rounds where a ready link was
    open but its tail sent a different packet; for nodes, rounds where every ready
    link of the node was open and it sent nothing.
    """

    ok: bool
    h: int
    scope: str
    violation: tuple[Link | int, tuple[int, int]] | None = None
    skipped: int = 0


def certify_link_latency(trace: ExecutionTrace, h: int) -> LatencyVerdict:
    """Fail if some link stays ready but never open for ``h`` consecutive rounds."""
    if h < 1:
        raise ValueError(f"h must be positive, got {h}")

    streak: dict[Link, int] = {}
    skipped = 0
    violation = None

    for record in trace.rounds:
        ready = set(record.ready_links)
        opened = set(record.open_links)
        used = {(a.node, a.recipient) for a in record.attempts}
        skipped += len((ready & opened) - used)

        for link in list(streak):
            if link not in ready or link in opened:
                del streak[link]
        for link in sorted(ready - opened):
            streak[link] = streak.get(link, 0) + 1
            if violation is None and streak[link] >= h:
                violation = (link, (record.round - h + 1, record.round))

    ok = violation is None
    if not ok:
        logger.debug(f"Link latency {h} violated at {violation}")
    return LatencyVerdict(ok=ok, h=h, scope="link", violation=violation, skipped=skipped)


def certify_node_latency(trace: ExecutionTrace, h: int) -> LatencyVerdict:
    """Per-node form: a node with ready packets must have all of its ready links open at once
    at least every h rounds.

    A node that passes at h also passes link latency h for each of its links.
    """
    if h < 1:
        raise ValueError(f"h must be positive, got {h}")

    streak: dict[int, int] = {}
    skipped = 0
    violation = None

    for record in trace.rounds:
        opened = set(record.open_links)
        ready_by_node: dict[int, set[int]] = {}
        for u, w in record.ready_links:
            ready_by_node.setdefault(u, set()).add(w)
        ready_nodes = set(ready_by_node)
        open_nodes = {u for u, hops in ready_by_node.items() if all((u, w) in opened for w in hops)}
        senders = {a.node for a in record.attempts}
        skipped += len(open_nodes - senders)

        for node in list(streak):
            if node not in ready_nodes or node in open_nodes:
                del streak[node]
        for node in sorted(ready_nodes - open_nodes):
            streak[node] = streak.get(node, 0) + 1
            if violation is None and streak[node] >= h:
                violation = (node, (record.round - h + 1, record.round))

    ok = violation is None
    return LatencyVerdict(ok=ok, h=h, scope="node", violation=violation, skipped=skipped)
