from collections import defaultdict

from app.adversary.events import InjectionEvent, InjectionStrategy
from app.adversary.stochastic import TokenBucketAdversary
from app.engine.config import ExecutionConfig, HearingMode, SuccessModel
from app.engine.hearing import hearable_neighbors, proactive_phase, reactive_phase
from app.engine.radio import Resolution, Transmission, open_links, resolve_success
from app.exceptions import InvariantViolation
from app.models.packet import Packet
from app.models.state import RoundState
from app.models.trace import Attempt, ExecutionTrace, PacketRecord, RoundRecord
from app.oracles.schedules import indicate
from app.scheduling.policies import Scheduler
from app.scheduling.ties import TieBreaker
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


class RoundOrchestrator:
    """
    Runs one execution round by round.

    Each round:
    1. Adversary injections enter their source queues
    2. Oracle indication
    3. Hearing control and scheduling at every permitted node
    4. Success resolution
    5. Queue updates and the round record
    """

    def __init__(self, config: ExecutionConfig):
        config.validate()
        self.config = config
        self.graph = config.graph
        self.scheduler = Scheduler(config.policy, TieBreaker(config.tie))

        self.adversary = None
        self.script: dict[int, list[InjectionEvent]] = defaultdict(list)
        if config.adversary.strategy == InjectionStrategy.STOCHASTIC:
            self.adversary = TokenBucketAdversary(config.adversary, config.graph)
        else:
            for event in config.adversary.script:
                self.script[event.round].append(event)

    def injections(self, round_: int) -> list[InjectionEvent]:
        if self.adversary is not None:
            return self.adversary.events_for_round(round_)
        return self.script.get(round_, [])

    def step(self, state: RoundState, round_: int) -> tuple[RoundState, RoundRecord]:
        if round_ >= self.config.horizon:
            raise ValueError(f"round {round_} is past the horizon {self.config.horizon}")

        config = self.config
        graph = self.graph

        injected: list[int] = []
        for event in self.injections(round_):
            packet = Packet(id=state.injected, injection_round=round_, itinerary=event.itinerary)
            state.packets[packet.id] = packet
            state.enqueue(event.source, packet)
            state.injected += 1
            injected.append(packet.id)

        indication = indicate(config.oracle, round_)
        permitted = sorted(indication.permitted)

        eligible: dict[int, list[Packet]] = {}
        for node, queue in enumerate(state.queues):
            if queue:
                ready = [p for p in state.queued_packets(node) if p.eligible(round_)]
                if ready:
                    eligible[node] = ready
        ready_links = sorted({(node, p.next_hop) for node, ps in eligible.items() for p in ps})
        contenders = frozenset(v for v in permitted if v in eligible)

        transmissions: list[Transmission] = []
        paused: list[int] = []
        for node in permitted:
            if node not in eligible:
                continue
            hearable = hearable_neighbors(node, config.success, graph, indication, contenders)
            if config.hearing == HearingMode.PROACTIVE:
                chosen = proactive_phase(node, hearable, eligible[node], self.scheduler, round_)
                if chosen is None:
                    paused.append(node)
                    continue
            else:
                chosen = reactive_phase(node, eligible[node], self.scheduler, round_, hearable)
            transmissions.append(Transmission(node=node, packet=chosen, recipient=chosen.next_hop))
            state.in_flight[node] = chosen.id

        resolution = resolve_success(transmissions, config.success, graph, indication)
        transmitters = frozenset(t.node for t in transmissions)
        opened = open_links(config.success, graph, indication, transmitters)

        deliveries: list[int] = []
        for t in transmissions:
            if t.node not in resolution.succeeded:
                continue
            packet = t.packet
            state.dequeue(t.node, packet.id)
            self.scheduler.tie.forget(t.node, packet.id)
            packet.advance(round_)
            if packet.delivered:
                state.delivered.add(packet.id)
                deliveries.append(packet.id)
            else:
                state.enqueue(packet.current_node, packet)

        state.in_flight.clear()
        state.round = round_ + 1

        record = RoundRecord(
            round=round_,
            permitted=tuple(permitted),
            attempts=tuple(
                Attempt(t.node, t.packet.id, t.recipient, t.node in resolution.succeeded)
                for t in transmissions
            ),
            heard=tuple(resolution.heard),
            collisions=tuple(resolution.collisions),
            queue_sizes=state.queue_sizes(),
            q_total=state.total_queued(),
            injections=tuple(injected),
            deliveries=tuple(deliveries),
            ready_links=tuple(ready_links),
            open_links=opened,
            paused=tuple(paused),
        )

        if config.check_invariants:
            state.check_invariants()
            self._check_record(record, resolution)

        return state, record

    def _check_record(self, record: RoundRecord, resolution: Resolution) -> None:
        senders = [a.node for a in record.attempts]
        if len(senders) != len(set(senders)):
            raise InvariantViolation(f"round {record.round}: a node attempted twice")

        attempted = {a.node: a for a in record.attempts}
        permitted = set(record.permitted)
        receivers: set[int] = set()
        for event in record.heard:
            if event.sender not in attempted or event.sender not in permitted:
                raise InvariantViolation(
                    f"round {record.round}: {event.receiver} heard {event.sender}, which did not transmit"
                )
            if self.config.success != SuccessModel.INTERFERENCE_FREE:
                if event.receiver in receivers:
                    raise InvariantViolation(
                        f"round {record.round}: node {event.receiver} heard two messages"
                    )
                receivers.add(event.receiver)
            if self.config.success == SuccessModel.RADIO_COLLISION:
                rivals = [u for u in self.graph.adjacency[event.receiver] if u in attempted]
                if rivals != [event.sender]:
                    raise InvariantViolation(
                        f"round {record.round}: {event.receiver} heard {event.sender} among {rivals}"
                    )

        if self.config.hearing == HearingMode.PROACTIVE:
            failed = [a for a in record.attempts if not a.success]
            if failed:
                raise InvariantViolation(
                    f"round {record.round}: proactive transmission failed at node {failed[0].node}"
                )


def step(
    state: RoundState, config: ExecutionConfig, round_: int, orchestrator: RoundOrchestrator | None = None
) -> tuple[RoundState, RoundRecord]:
    """One round of ``config``; without an orchestrator the one attached to ``state`` is reused."""
    if orchestrator is None:
        engine = state.engine
        if isinstance(engine, RoundOrchestrator) and engine.config is config:
            orchestrator = engine
        else:
            orchestrator = RoundOrchestrator(config)
            state.engine = orchestrator
    return orchestrator.step(state, round_)


def run(config: ExecutionConfig) -> ExecutionTrace:
    """Execute ``config.horizon`` rounds and return the full trace."""
    orchestrator = RoundOrchestrator(config)
    state = RoundState.empty(config.graph.node_count)
    trace = ExecutionTrace(
        node_count=config.graph.node_count,
        horizon=config.horizon,
        seed=config.seed,
        policy=config.policy.value,
        hearing=config.hearing.value,
        success=config.success.value,
        oracle=config.oracle.mode.value,
    )

    for round_ in range(config.horizon):
        state, record = orchestrator.step(state, round_)
        trace.rounds.append(record)

    trace.packets = {pid: PacketRecord.from_packet(p) for pid, p in sorted(state.packets.items())}
    logger.debug(
        f"Run {config.label or 'unnamed'}: {config.horizon} rounds, {trace.injected} injected, "
        f"{trace.delivered} delivered, final Q={state.total_queued()}"
    )
    return trace
