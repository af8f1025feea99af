import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterator

from app.models.network import Link
from app.models.packet import Packet


@dataclass(frozen=True)
class Attempt:
    node: int
    packet: int
    recipient: int
    success: bool


@dataclass(frozen=True)
class HeardEvent:
    receiver: int
    sender: int
    packet: int
    intended: bool


@dataclass(frozen=True)
class RoundRecord:
    """Everything observable about one round of an execution."""

    round: int
    permitted: tuple[int, ...]
    attempts: tuple[Attempt, ...]
    heard: tuple[HeardEvent, ...]
    collisions: tuple[int, ...]
    queue_sizes: tuple[int, ...]
    q_total: int
    injections: tuple[int, ...]
    deliveries: tuple[int, ...]
    ready_links: tuple[Link, ...] = ()
    open_links: tuple[Link, ...] = ()
    paused: tuple[int, ...] = ()


@dataclass(frozen=True)
class PacketRecord:
    id: int
    injection_round: int
    itinerary: tuple[int, ...]
    arrival_rounds: tuple[int, ...]
    delivery_round: int | None

    @classmethod
    def from_packet(cls, packet: Packet) -> "PacketRecord":
        return cls(
            id=packet.id,
            injection_round=packet.injection_round,
            itinerary=tuple(packet.itinerary),
            arrival_rounds=tuple(packet.arrival_rounds),
            delivery_round=packet.delivery_round,
        )

    def delay(self, horizon: int) -> int:
        """Rounds in the system; undelivered packets count their age at the horizon."""
        end = self.delivery_round if self.delivery_round is not None else horizon
        return end - self.injection_round

    def residence(self) -> list[tuple[int, int, int | None]]:
        """(node, arrival round, leave round) for every queue the packet occupied."""
        stays = []
        for i in range(len(self.itinerary) - 1):
            if i >= len(self.arrival_rounds):
                break
            leave = self.arrival_rounds[i + 1] if i + 1 < len(self.arrival_rounds) else None
            stays.append((self.itinerary[i], self.arrival_rounds[i], leave))
        return stays


@dataclass
class ExecutionTrace:
    """Round and packet records of one execution; all checkers read this."""

    node_count: int
    horizon: int
    seed: int
    policy: str
    hearing: str
    success: str
    oracle: str
    rounds: list[RoundRecord] = field(default_factory=list)
    packets: dict[int, PacketRecord] = field(default_factory=dict)

    @property
    def injected(self) -> int:
        return len(self.packets)

    @property
    def delivered(self) -> int:
        return sum(1 for p in self.packets.values() if p.delivery_round is not None)

    def q_series(self) -> list[int]:
        return [record.q_total for record in self.rounds]

    def q_at(self, round_: int) -> int:
        """Total queued at the end of the given round (0 before the first round)."""
        if round_ < 0 or not self.rounds:
            return 0
        return self.rounds[min(round_, len(self.rounds) - 1)].q_total

    def max_queue(self) -> int:
        """Largest single-node queue seen at the end of any round."""
        return max((max(r.queue_sizes, default=0) for r in self.rounds), default=0)

    def max_delay(self) -> int:
        return max((p.delay(self.horizon) for p in self.packets.values()), default=0)

    def header(self) -> dict[str, Any]:
        return {
            "type": "header",
            "node_count": self.node_count,
            "horizon": self.horizon,
            "seed": self.seed,
            "policy": self.policy,
            "hearing": self.hearing,
            "success": self.success,
            "oracle": self.oracle,
        }

    def iter_jsonl(self) -> Iterator[str]:
        """Header, one record per round, then one record per packet in id order."""
        yield json.dumps(self.header(), separators=(",", ":"))
        for record in self.rounds:
            yield json.dumps({"type": "round", **asdict(record)}, separators=(",", ":"))
        for pid in sorted(self.packets):
            yield json.dumps({"type": "packet", **asdict(self.packets[pid])}, separators=(",", ":"))

    def to_jsonl(self) -> str:
        return "\n".join(self.iter_jsonl()) + "\n"

    def metrics_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["round", "Q_total", *[f"q_{v}" for v in range(self.node_count)]])
        for record in self.rounds:
            writer.writerow([record.round, record.q_total, *record.queue_sizes])
        return buffer.getvalue()
