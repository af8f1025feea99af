from enum import Enum
from typing import Callable, Sequence

from app.models.packet import Packet
from app.scheduling.ties import TieBreaker


class PolicyId(str, Enum):
    FIFO = "FIFO"
    LIFO = "LIFO"
    SIS = "SIS"
    LIS = "LIS"
    NTG = "NTG"
    FTG = "FTG"
    NTS = "NTS"
    FFS = "FFS"


# Smaller key wins. Every key reads packet fields only.
PRIORITY_KEYS: dict[PolicyId, Callable[[Packet], int]] = {
    PolicyId.FIFO: lambda p: p.arrived_at,
    PolicyId.LIFO: lambda p: -p.arrived_at,
    PolicyId.SIS: lambda p: -p.injection_round,
    PolicyId.LIS: lambda p: p.injection_round,
    PolicyId.NTG: lambda p: p.remaining_hops,
    PolicyId.FTG: lambda p: -p.remaining_hops,
    PolicyId.NTS: lambda p: p.traversed_hops,
    PolicyId.FFS: lambda p: -p.traversed_hops,
}


def priority_key(policy: PolicyId, packet: Packet) -> int:
    return PRIORITY_KEYS[PolicyId(policy)](packet)


def top_candidates(policy: PolicyId, candidates: Sequence[Packet]) -> list[Packet]:
    """Candidates sharing the best key, by packet id."""
    if not candidates:
        return []
    key = PRIORITY_KEYS[PolicyId(policy)]
    best = min(key(p) for p in candidates)
    return sorted((p for p in candidates if key(p) == best), key=lambda p: p.id)


def select(
    policy: PolicyId,
    tie: TieBreaker,
    node: int,
    candidates: Sequence[Packet],
    round_: int,
    open_next_hops: frozenset[int] = frozenset(),
) -> Packet | None:
    """Packet the policy offers at ``node`` this round, or None for an empty candidate set."""
    tied = top_candidates(policy, candidates)
    if not tied:
        return None
    if len(tied) == 1:
        return tied[0]
    return tie.choose(node, tied, round_, open_next_hops)


class Scheduler:
    """A policy bound to one execution's tie-breaking state."""

    def __init__(self, policy: PolicyId, tie: TieBreaker):
        self.policy = PolicyId(policy)
        self.tie = tie

    def select(
        self,
        node: int,
        candidates: Sequence[Packet],
        round_: int,
        open_next_hops: frozenset[int] = frozenset(),
    ) -> Packet | None:
        return select(self.policy, self.tie, node, candidates, round_, open_next_hops)
