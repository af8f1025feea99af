from fractions import Fraction

import networkx as nx
import numpy as np

from app.adversary.events import AdversarySpec, InjectionEvent, InjectionStrategy
from app.exceptions import ScenarioValidationError
from app.models.network import NetworkGraph
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


class TokenBucket:
    """Per-node token bucket with capacity b and refill r per round, kept in exact rationals."""

    def __init__(self, rate: Fraction, burst: int):
        self.rate = Fraction(rate)
        self.burst = Fraction(burst)
        self.tokens = Fraction(burst)

    def refill(self) -> None:
        self.tokens = min(self.burst, self.tokens + self.rate)

    def available(self, value: int = 1) -> bool:
        return self.tokens >= value

    def take(self, value: int = 1) -> None:
        self.tokens -= value


class TokenBucketAdversary:
    """Stochastic (b, r) adversary, admissible by construction.

    Every node owns a bucket that starts full; a packet is emitted only if every node on
    its itinerary can pay one token, and pays at all of them. Within a round the path pool
    is walked in a seeded order, repeatedly, until a pass emits nothing. Rounds must be
    requested in increasing order.
    """

    def __init__(self, spec: AdversarySpec, graph: NetworkGraph):
        if spec.strategy != InjectionStrategy.STOCHASTIC:
            raise ScenarioValidationError("token-bucket adversary needs a stochastic spec")
        self.spec = spec
        self.graph = graph
        self.pool = [tuple(path) for path in spec.path_pool]
        self.buckets = [TokenBucket(spec.rate, spec.burstiness) for _ in range(graph.node_count)]
        self.last_round: int | None = None

    def events_for_round(self, round_: int) -> list[InjectionEvent]:
        if self.last_round is not None:
            if round_ <= self.last_round:
                raise ValueError(f"round {round_} already generated (last {self.last_round})")
            for _ in range(round_ - self.last_round):
                for bucket in self.buckets:
                    bucket.refill()
        self.last_round = round_

        rng = np.random.default_rng([self.spec.seed, round_])
        order = [int(i) for i in rng.permutation(len(self.pool))]
        events: list[InjectionEvent] = []

        emitted = True
        while emitted:
            emitted = False
            for index in order:
                if self.spec.intensity < 1 and rng.random() >= self.spec.intensity:
                    continue
                path = self.pool[index]
                nodes = set(path)
                if all(self.buckets[v].available() for v in nodes):
                    for v in nodes:
                        self.buckets[v].take()
                    events.append(InjectionEvent(round=round_, itinerary=path))
                    emitted = True

        return events


def stochastic_injector(spec: AdversarySpec, graph: NetworkGraph, round_: int) -> list[InjectionEvent]:
    """Events a fresh token-bucket adversary emits at ``round_``.

    Replays rounds 0..round_ so the answer depends only on (spec, round).
    """
    adversary = TokenBucketAdversary(spec, graph)
    events: list[InjectionEvent] = []
    for t in range(round_ + 1):
        events = adversary.events_for_round(t)
    return events


def simple_path_pool(graph: NetworkGraph, max_hops: int) -> tuple[tuple[int, ...], ...]:
    """All simple paths of 1..max_hops links, sorted."""
    if max_hops < 1:
        raise ScenarioValidationError(f"max_hops must be at least 1, got {max_hops}")
    nx_graph = graph.to_networkx()
    paths: set[tuple[int, ...]] = set()
    for source in range(graph.node_count):
        for target in range(graph.node_count):
            if source == target:
                continue
            for path in nx.all_simple_paths(nx_graph, source, target, cutoff=max_hops):
                paths.add(tuple(path))
    logger.debug(f"Path pool: {len(paths)} simple paths up to {max_hops} hops")
    return tuple(sorted(paths))
