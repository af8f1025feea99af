from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from app.exceptions import ScenarioValidationError
from app.models.network import Link, NetworkGraph
from app.oracles.transmitters import TransmitterArray
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


class OracleMode(str, Enum):
    SCRIPTED = "scripted"
    WORK_CONSERVING = "work_conserving"
    ROUND_ROBIN = "round_robin"
    TRANSMITTER = "transmitter"


class RegularityClass(str, Enum):
    LINK_LATENCY_ONLY = "link_latency_only"
    REGULAR = "regular"


@dataclass(frozen=True)
class Indication:
    """What the oracle tells the nodes in one round.

    ``up_links`` is only set by scripted oracles; implemented oracles leave hearing to the
    success model.
    """

    permitted: frozenset[int]
    up_links: frozenset[Link] | None = None


_EMPTY = Indication(permitted=frozenset(), up_links=frozenset())


@dataclass(frozen=True, eq=False)
class OracleSchedule:
    mode: OracleMode
    node_count: int
    records: Mapping[int, Indication] = field(default_factory=dict)
    period: int | None = None
    transmitter: TransmitterArray | None = None
    latency: int | None = None
    regularity: RegularityClass = RegularityClass.LINK_LATENCY_ONLY

    @classmethod
    def scripted(
        cls,
        node_count: int,
        records: Mapping[int, Iterable[Link]] | Mapping[int, Indication],
        period: int | None = None,
        latency: int | None = None,
        regularity: RegularityClass = RegularityClass.LINK_LATENCY_ONLY,
        permitted: Mapping[int, Iterable[int]] | None = None,
    ) -> "OracleSchedule":
        """Scripted oracle from per-round up links.

        Unless given explicitly, the permitted nodes of a round are the tails of its up links.
        """
        indications: dict[int, Indication] = {}
        for round_, value in records.items():
            if isinstance(value, Indication):
                indication = value
            else:
                up = frozenset((int(u), int(w)) for u, w in value)
                extra = frozenset(permitted.get(round_, ())) if permitted else frozenset()
                indication = Indication(
                    permitted=frozenset(u for u, _ in up) | extra, up_links=up
                )
            _check_indication(node_count, int(round_), indication)
            indications[int(round_)] = indication

        if permitted:
            for round_, nodes in permitted.items():
                if round_ not in indications:
                    indication = Indication(permitted=frozenset(nodes), up_links=frozenset())
                    _check_indication(node_count, int(round_), indication)
                    indications[int(round_)] = indication

        if period is not None:
            if period < 1:
                raise ScenarioValidationError(f"oracle period must be positive, got {period}")
            stray = [r for r in indications if r >= period]
            if stray:
                raise ScenarioValidationError(
                    f"cyclic schedule with period {period} has records at rounds {sorted(stray)[:5]}"
                )

        return cls(
            mode=OracleMode.SCRIPTED,
            node_count=node_count,
            records=indications,
            period=period,
            latency=latency,
            regularity=regularity,
        )

    @classmethod
    def work_conserving(cls, node_count: int) -> "OracleSchedule":
        return cls(
            mode=OracleMode.WORK_CONSERVING,
            node_count=node_count,
            latency=1,
            regularity=RegularityClass.REGULAR,
        )

    @classmethod
    def round_robin(cls, node_count: int) -> "OracleSchedule":
        return cls(
            mode=OracleMode.ROUND_ROBIN,
            node_count=node_count,
            latency=node_count,
            regularity=RegularityClass.REGULAR,
        )

    @classmethod
    def from_transmitter(cls, array: TransmitterArray) -> "OracleSchedule":
        # Only an isolating array earns a latency claim; the claim is the cycle length.
        verdict = array.verify()
        return cls(
            mode=OracleMode.TRANSMITTER,
            node_count=array.node_count,
            transmitter=array,
            latency=array.length if verdict.ok else None,
            regularity=(
                RegularityClass.REGULAR if verdict.ok else RegularityClass.LINK_LATENCY_ONLY
            ),
        )

    @property
    def regular(self) -> bool:
        return self.regularity == RegularityClass.REGULAR


def _check_indication(node_count: int, round_: int, indication: Indication) -> None:
    if round_ < 0:
        raise ScenarioValidationError(f"oracle record for negative round {round_}")
    for node in indication.permitted:
        if not 0 <= node < node_count:
            raise ScenarioValidationError(f"round {round_}: permitted node {node} out of range")
    heads: set[int] = set()
    for u, w in indication.up_links or ():
        if u not in indication.permitted:
            raise ScenarioValidationError(
                f"round {round_}: up link {(u, w)} leaves non-permitted node {u}"
            )
        if not 0 <= w < node_count:
            raise ScenarioValidationError(f"round {round_}: up link {(u, w)} out of range")
        if w in heads:
            raise ScenarioValidationError(
                f"round {round_}: node {w} would hear two messages (single port)"
            )
        heads.add(w)


def indicate(schedule: OracleSchedule, round_: int) -> Indication:
    """Permitted transmitters (and, for scripted oracles, up links) in a round."""
    if round_ < 0:
        raise ValueError(f"round must be non-negative, got {round_}")

    if schedule.mode == OracleMode.SCRIPTED:
        key = round_ % schedule.period if schedule.period else round_
        return schedule.records.get(key, _EMPTY)

    if schedule.mode == OracleMode.WORK_CONSERVING:
        return Indication(permitted=frozenset(range(schedule.node_count)))

    if schedule.mode == OracleMode.ROUND_ROBIN:
        return Indication(permitted=frozenset([round_ % schedule.node_count]))

    column = schedule.transmitter.column(round_)
    return Indication(permitted=frozenset(int(v) for v in np.flatnonzero(column)))


def periodic_link_schedule(graph: NetworkGraph, h: int, seed: int = 0) -> OracleSchedule:
    """Cyclic scripted oracle opening every directed link exactly once per ``h`` rounds.

    Links are coloured so that no two links sharing a tail or a head open in the same
    round, which needs ``h`` at least the maximum degree. Phases are shuffled by the seed.
    """
    if h < 1:
        raise ScenarioValidationError(f"latency h must be positive, got {h}")
    if graph.max_degree > h:
        raise ScenarioValidationError(
            f"max degree {graph.max_degree} exceeds h={h}; links cannot all open once per h rounds"
        )

    rng = np.random.default_rng(seed)
    links = list(graph.directed_links)
    order = rng.permutation(len(links))
    coloring = _bipartite_link_coloring([links[i] for i in order], h)
    phase_of_color = [int(p) for p in rng.permutation(h)]

    records: dict[int, list[Link]] = {phase: [] for phase in range(h)}
    for link, color in coloring.items():
        records[phase_of_color[color]].append(link)

    logger.debug(f"Periodic link schedule: {len(links)} links over period {h} (seed {seed})")
    return OracleSchedule.scripted(
        graph.node_count,
        {phase: sorted(up) for phase, up in records.items()},
        period=h,
        latency=h,
    )


def _bipartite_link_coloring(links: list[Link], colors: int) -> dict[Link, int]:
    # Tails and heads form the two sides of a bipartite multigraph, so an alternating
    # path flip always frees a common colour (Konig's edge-colouring theorem).
    used: dict[tuple[str, int], dict[int, Link]] = {}
    coloring: dict[Link, int] = {}

    def ends(link: Link) -> tuple[tuple[str, int], tuple[str, int]]:
        return ("out", link[0]), ("in", link[1])

    for link in links:
        tail, head = ends(link)
        at_tail = used.setdefault(tail, {})
        at_head = used.setdefault(head, {})
        free_tail = [c for c in range(colors) if c not in at_tail]
        free_head = [c for c in range(colors) if c not in at_head]

        common = next((c for c in free_tail if c not in at_head), None)
        if common is None:
            a, b = free_tail[0], free_head[0]
            path: list[tuple[Link, int]] = []
            vertex, color = head, a
            while color in used.get(vertex, {}):
                edge = used[vertex][color]
                path.append((edge, color))
                x, y = ends(edge)
                vertex = y if vertex == x else x
                color = b if color == a else a
            for edge, color in path:
                for end in ends(edge):
                    del used[end][color]
            for edge, color in path:
                swapped = b if color == a else a
                for end in ends(edge):
                    used.setdefault(end, {})[swapped] = edge
                coloring[edge] = swapped
            common = a

        at_tail[common] = link
        at_head[common] = link
        coloring[link] = common

    return coloring
