from app.models.network import (
    Link,
    NetworkGraph,
    WirelineGraph,
    longest_simple_path_length,
    validate_itinerary,
)
from app.models.packet import Packet
from app.models.state import RoundState
from app.models.trace import Attempt, ExecutionTrace, HeardEvent, PacketRecord, RoundRecord

__all__ = [
    "Link",
    "NetworkGraph",
    "WirelineGraph",
    "longest_simple_path_length",
    "validate_itinerary",
    "Packet",
    "RoundState",
    "Attempt",
    "ExecutionTrace",
    "HeardEvent",
    "PacketRecord",
    "RoundRecord",
]
