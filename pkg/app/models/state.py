from dataclasses import dataclass, field
from typing import Any

from app.exceptions import InvariantViolation
from app.models.packet import Packet


@dataclass
class RoundState:
    """Mutable engine state between rounds.

    Queues are insertion-ordered lists of packet ids; ordering semantics belong to the
    scheduling policies, not to the container.
    """

    round: int
    queues: list[list[int]]
    packets: dict[int, Packet] = field(default_factory=dict)
    delivered: set[int] = field(default_factory=set)
    injected: int = 0
    in_flight: dict[int, int] = field(default_factory=dict)
    # orchestrator carrying adversary and tie state between bare step calls
    engine: Any = field(default=None, repr=False, compare=False)

    @classmethod
    def empty(cls, node_count: int) -> "RoundState":
        return cls(round=0, queues=[[] for _ in range(node_count)])

    def enqueue(self, node: int, packet: Packet) -> None:
        self.queues[node].append(packet.id)

    def dequeue(self, node: int, packet_id: int) -> None:
        self.queues[node].remove(packet_id)

    def queued_packets(self, node: int) -> list[Packet]:
        return [self.packets[pid] for pid in self.queues[node]]

    def queue_sizes(self) -> tuple[int, ...]:
        return tuple(len(queue) for queue in self.queues)

    def total_queued(self) -> int:
        return sum(len(queue) for queue in self.queues)

    def check_invariants(self) -> None:
        """Raise InvariantViolation on lost, duplicated or doubly-placed packets."""
        seen: set[int] = set()
        for node, queue in enumerate(self.queues):
            for pid in queue:
                if pid in seen:
                    raise InvariantViolation(f"packet {pid} queued twice (again at node {node})")
                if pid in self.delivered:
                    raise InvariantViolation(f"packet {pid} both delivered and queued")
                if self.packets[pid].current_node != node:
                    raise InvariantViolation(
                        f"packet {pid} queued at {node} but positioned at "
                        f"{self.packets[pid].current_node}"
                    )
                seen.add(pid)
        if len(seen) + len(self.delivered) != self.injected:
            raise InvariantViolation(
                f"conservation broken: injected={self.injected}, queued={len(seen)}, "
                f"delivered={len(self.delivered)}"
            )
