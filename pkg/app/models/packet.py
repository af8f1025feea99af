from dataclasses import dataclass, field


@dataclass
class Packet:
    """A packet with a source-routed itinerary.

    ``arrival_rounds[i]`` is the round the packet arrived at ``itinerary[i]``; entry 0 is
    the injection round (the packet's class). The round it leaves ``itinerary[i]`` is
    ``arrival_rounds[i + 1]``, since a heard packet lands at the recipient in the same round.
    """

    id: int
    injection_round: int
    itinerary: tuple[int, ...]
    hop_index: int = 0
    arrival_rounds: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.arrival_rounds:
            self.arrival_rounds = [self.injection_round]

    @property
    def hops(self) -> int:
        return len(self.itinerary) - 1

    @property
    def current_node(self) -> int:
        return self.itinerary[self.hop_index]

    @property
    def next_hop(self) -> int | None:
        if self.delivered:
            return None
        return self.itinerary[self.hop_index + 1]

    @property
    def delivered(self) -> bool:
        return self.hop_index >= self.hops

    @property
    def remaining_hops(self) -> int:
        return self.hops - self.hop_index

    @property
    def traversed_hops(self) -> int:
        return self.hop_index

    @property
    def arrived_at(self) -> int:
        """Round the packet reached its current node."""
        return self.arrival_rounds[self.hop_index]

    @property
    def delivery_round(self) -> int | None:
        return self.arrival_rounds[-1] if self.delivered else None

    def eligible(self, round_: int) -> bool:
        """A packet may be sent from a node starting the round after it arrived there."""
        return not self.delivered and self.arrived_at < round_

    def advance(self, round_: int) -> None:
        if self.delivered:
            raise ValueError(f"packet {self.id} already delivered")
        if round_ <= self.arrived_at:
            raise ValueError(f"packet {self.id} cannot leave node in round {round_}")
        self.hop_index += 1
        self.arrival_rounds.append(round_)
