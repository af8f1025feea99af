from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from app.exceptions import ScenarioValidationError
from app.models.packet import Packet


class TieKind(str, Enum):
    ARBITRARY = "arbitrary"
    PERMANENT = "permanent"


class ArbitraryStrategy(str, Enum):
    SEEDED_RANDOM = "seeded_random"
    SCRIPTED = "scripted"
    FIXED_ID = "fixed_id"
    LINK_AWARE = "link_aware"


class OrderRule(str, Enum):
    FIXED_ID = "fixed_id"
    RANDOM_RANK = "random_rank"


@dataclass(frozen=True)
class TieBreakMode:
    """How equal-priority packets are ordered.

    Scripted choices map (node, round) to the packet id to send; a choice that is not
    among the tied packets falls back to the lowest id.
    """

    kind: TieKind = TieKind.ARBITRARY
    strategy: ArbitraryStrategy = ArbitraryStrategy.SEEDED_RANDOM
    order_rule: OrderRule = OrderRule.FIXED_ID
    seed: int = 0
    choices: Mapping[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def arbitrary(cls, strategy: str = "seeded_random", seed: int = 0, choices=None) -> "TieBreakMode":
        strategy = ArbitraryStrategy(strategy)
        if strategy == ArbitraryStrategy.SCRIPTED and not choices:
            raise ScenarioValidationError("scripted tie-breaking needs a choice list")
        return cls(kind=TieKind.ARBITRARY, strategy=strategy, seed=seed, choices=dict(choices or {}))

    @classmethod
    def permanent(cls, order_rule: str = "fixed_id", seed: int = 0) -> "TieBreakMode":
        return cls(kind=TieKind.PERMANENT, order_rule=OrderRule(order_rule), seed=seed)

    def describe(self) -> str:
        if self.kind == TieKind.PERMANENT:
            return f"permanent({self.order_rule.value})"
        return f"arbitrary({self.strategy.value})"


class TieBreaker:
    """Engine-owned tie state: the permanent-order table and per-packet ranks."""

    def __init__(self, mode: TieBreakMode):
        self.mode = mode
        self.order: dict[tuple[int, int, int], int] = {}
        self.ranks: dict[tuple[int, int], float] = {}
        self.pairs: dict[tuple[int, int], set[tuple[int, int, int]]] = {}

    def choose(
        self,
        node: int,
        tied: Sequence[Packet],
        round_: int,
        open_next_hops: frozenset[int] = frozenset(),
    ) -> Packet:
        tied = sorted(tied, key=lambda p: p.id)
        if self.mode.kind == TieKind.PERMANENT:
            best = tied[0]
            for other in tied[1:]:
                if self.permanent_order_record(node, best, other) == other.id:
                    best = other
            return best

        strategy = self.mode.strategy
        if strategy == ArbitraryStrategy.SCRIPTED:
            wanted = self.mode.choices.get((node, round_))
            return next((p for p in tied if p.id == wanted), tied[0])
        if strategy == ArbitraryStrategy.FIXED_ID:
            return tied[0]
        if strategy == ArbitraryStrategy.LINK_AWARE:
            return next((p for p in tied if p.next_hop in open_next_hops), tied[0])

        rng = np.random.default_rng([self.mode.seed, node, round_])
        return tied[int(rng.integers(len(tied)))]

    def permanent_order_record(self, node: int, p: Packet, q: Packet) -> int:
        """Id of the packet that wins between p and q at ``node``; fixed on first call."""
        key = (node, min(p.id, q.id), max(p.id, q.id))
        if key not in self.order:
            if self.mode.order_rule == OrderRule.RANDOM_RANK:
                self.order[key] = min((p, q), key=lambda x: (self._rank(node, x.id), x.id)).id
            else:
                self.order[key] = min(p.id, q.id)
            self.pairs.setdefault((node, p.id), set()).add(key)
            self.pairs.setdefault((node, q.id), set()).add(key)
        return self.order[key]

    def forget(self, node: int, packet_id: int) -> None:
        """Drop the entries of a packet that has left ``node``.

        Recorded orders are a function of ids and seeded ranks, so a packet that later
        returns to ``node`` gets the same orders again.
        """
        for key in self.pairs.pop((node, packet_id), ()):
            self.order.pop(key, None)
            other = key[2] if key[1] == packet_id else key[1]
            partner = self.pairs.get((node, other))
            if partner is not None:
                partner.discard(key)
                if not partner:
                    del self.pairs[(node, other)]
        self.ranks.pop((node, packet_id), None)

    def _rank(self, node: int, packet_id: int) -> float:
        key = (node, packet_id)
        if key not in self.ranks:
            rng = np.random.default_rng([self.mode.seed, node, packet_id])
            self.ranks[key] = float(rng.random())
        return self.ranks[key]
