from app.oracles.certification import LatencyVerdict, certify_link_latency, certify_node_latency
from app.oracles.schedules import (
    Indication,
    OracleMode,
    OracleSchedule,
    RegularityClass,
    indicate,
    periodic_link_schedule,
)
from app.oracles.transmitters import (
    TransmitterArray,
    TransmitterVerdict,
    build_transmitter,
    identity_transmitter,
    read_transmitter,
    verify_transmitter,
    write_transmitter,
)

__all__ = [
    "LatencyVerdict",
    "certify_link_latency",
    "certify_node_latency",
    "Indication",
    "OracleMode",
    "OracleSchedule",
    "RegularityClass",
    "indicate",
    "periodic_link_schedule",
    "TransmitterArray",
    "TransmitterVerdict",
    "build_transmitter",
    "identity_transmitter",
    "read_transmitter",
    "verify_transmitter",
    "write_transmitter",
]
