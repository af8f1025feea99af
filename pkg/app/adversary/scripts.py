"""Scripted injection patterns that drive reactive protocols into trouble."""

from dataclasses import dataclass, field
from fractions import Fraction

from app.adversary.events import AdmissibilityScope, InjectionEvent
from app.exceptions import ScenarioValidationError
from app.models.network import Link, NetworkGraph
from app.oracles.schedules import OracleSchedule

CENTER, U, V = 0, 1, 2


@dataclass(frozen=True)
class ScriptedScenario:
    graph: NetworkGraph
    events: tuple[InjectionEvent, ...]
    oracle: OracleSchedule
    horizon: int
    latency: int
    rate: Fraction
    burstiness: int
    scope: AdmissibilityScope = AdmissibilityScope.NODE
    checkpoints: tuple[int, ...] = ()
    tie_choices: dict[tuple[int, int], int] = field(default_factory=dict)


def script_sis_reactive_instability(k: int, iterations: int, burst: int = 4) -> ScriptedScenario:
    """Two-phase star pattern under which reactive SIS keeps ``burst`` more packets per iteration.

    Phase 1 (2*burst*k rounds): packets for v and u alternate, each injected just before
    the round its own link is down and the other link is up, so SIS always offers the
    wrong packet. Phase 2 (burst*(k+2) rounds): both links open together every k+2 rounds
    and the newest packets leave, stranding the oldest ``burst`` of them.

    Every link is ready-but-closed for at most k+1 consecutive rounds, so the oracle
    claims latency k+2; the rate 1/(2k) holds per link. ``burst`` must be even so the
    newest stranded packet heads for u and the next iteration's early v-link openings
    carry nothing.
    """
    if k < 2:
        raise ScenarioValidationError(f"k must be at least 2, got {k}")
    if iterations < 1:
        raise ScenarioValidationError(f"iterations must be at least 1, got {iterations}")
    if burst < 2 or burst % 2:
        raise ScenarioValidationError(f"burst must be a positive even number, got {burst}")

    graph = NetworkGraph.from_edges(3, [(CENTER, U), (CENTER, V)])
    to_u: Link = (CENTER, U)
    to_v: Link = (CENTER, V)
    length = burst * (3 * k + 2)

    events: list[InjectionEvent] = []
    up: dict[int, set[Link]] = {}

    for iteration in range(iterations):
        offset = iteration * length

        for j in range(1, 2 * burst + 1):
            odd = j % 2 == 1
            events.append(
                InjectionEvent(
                    round=offset + j * k - (1 if odd else 0),
                    itinerary=(CENTER, V) if odd else (CENTER, U),
                )
            )
            up.setdefault(offset + j * k, set()).add(to_u)

        for j in range(burst + 1):
            start = offset + 2 * j * k
            for t in (start + 1, start + k - 1):
                up.setdefault(t, set()).add(to_v)

        phase_two = offset + 2 * burst * k
        for i in range(1, burst + 1):
            up.setdefault(phase_two + (k + 2) * i, set()).update({to_u, to_v})

    latency = k + 2
    return ScriptedScenario(
        graph=graph,
        events=tuple(sorted(events, key=lambda e: e.round)),
        oracle=OracleSchedule.scripted(
            graph.node_count, {t: sorted(links) for t, links in sorted(up.items())}, latency=latency
        ),
        horizon=iterations * length + 1,
        latency=latency,
        rate=Fraction(1, 2 * latency - 4),
        burstiness=burst,
        scope=AdmissibilityScope.LINK,
        checkpoints=tuple((i + 1) * length for i in range(iterations)),
    )


def script_tie_blocking(rounds: int) -> ScriptedScenario:
    """Two tied packets at one node whose links open on alternate rounds.

    The tie choices always pick the packet whose link is down, so a reactive node keeps
    failing and nothing is ever delivered.
    """
    if rounds < 2:
        raise ScenarioValidationError(f"rounds must be at least 2, got {rounds}")

    graph = NetworkGraph.from_edges(3, [(CENTER, U), (CENTER, V)])
    events = (
        InjectionEvent(round=0, itinerary=(CENTER, U)),
        InjectionEvent(round=0, itinerary=(CENTER, V)),
    )
    first, second = 0, 1

    up: dict[int, list[Link]] = {}
    choices: dict[tuple[int, int], int] = {}
    for t in range(1, rounds):
        if t % 2 == 0:
            up[t] = [(CENTER, U)]
            choices[(CENTER, t)] = second
        else:
            up[t] = [(CENTER, V)]
            choices[(CENTER, t)] = first

    return ScriptedScenario(
        graph=graph,
        events=events,
        oracle=OracleSchedule.scripted(graph.node_count, up, latency=2),
        horizon=rounds,
        latency=2,
        rate=Fraction(0),
        burstiness=2,
        tie_choices=choices,
    )
