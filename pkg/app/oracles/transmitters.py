from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from app.config import settings
from app.exceptions import ScenarioValidationError, SizeGuardError
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class TransmitterVerdict:
    ok: bool
    witnesses: dict[int, int] = field(default_factory=dict)
    failing_row: int | None = None


@dataclass(frozen=True, eq=False)
class TransmitterArray:
    """Cyclic 0/1 schedule: row i is node i, column t is round t mod length."""

    bits: np.ndarray

    def __post_init__(self):
        if self.bits.ndim != 2 or self.bits.size == 0:
            raise ScenarioValidationError("transmitter array must be a non-empty 2-D 0/1 matrix")
        if not np.isin(self.bits, (0, 1)).all():
            raise ScenarioValidationError("transmitter array entries must be 0 or 1")

    @property
    def node_count(self) -> int:
        return int(self.bits.shape[0])

    @property
    def length(self) -> int:
        return int(self.bits.shape[1])

    def column(self, round_: int) -> np.ndarray:
        return self.bits[:, round_ % self.length]

    def verify(self) -> TransmitterVerdict:
        return verify_transmitter(self)

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "TransmitterArray":
        cleaned = [row.strip() for row in rows if row.strip()]
        if not cleaned:
            raise ScenarioValidationError("transmitter file has no rows")
        width = len(cleaned[0])
        for i, row in enumerate(cleaned):
            if len(row) != width:
                raise ScenarioValidationError(f"row {i} has length {len(row)}, expected {width}")
            if set(row) - {"0", "1"}:
                raise ScenarioValidationError(f"row {i} contains characters other than 0/1")
        return cls(np.array([[int(ch) for ch in row] for row in cleaned], dtype=np.uint8))

    def to_rows(self) -> list[str]:
        return ["".join(str(int(bit)) for bit in row) for row in self.bits]


def verify_transmitter(array: TransmitterArray) -> TransmitterVerdict:
    """Every row needs an isolated column: a 1 there and 0 in every other row."""
    bits = array.bits.astype(np.int64)
    isolated = (bits == 1) & (bits.sum(axis=0) == 1)

    witnesses: dict[int, int] = {}
    for row in range(array.node_count):
        columns = np.flatnonzero(isolated[row])
        if columns.size == 0:
            return TransmitterVerdict(ok=False, witnesses=witnesses, failing_row=row)
        witnesses[row] = int(columns[0])
    return TransmitterVerdict(ok=True, witnesses=witnesses)


def identity_transmitter(node_count: int) -> TransmitterArray:
    """Round robin written as a transmitter."""
    return TransmitterArray(np.eye(node_count, dtype=np.uint8))


def build_transmitter(node_count: int, length: int | None = None, seed: int = 0) -> TransmitterArray:
    """Greedy randomized transmitter.

    Random columns with bit density ``TRANSMITTER_DENSITY`` fill the array until the free
    slots are only enough for the rows still lacking a witness; those rows then get unit
    columns, so the result always verifies.
    """
    if node_count < 1:
        raise ScenarioValidationError(f"transmitter needs at least one node, got {node_count}")
    if node_count > settings.TRANSMITTER_MAX_NODES:
        raise SizeGuardError(
            f"transmitter construction limited to {settings.TRANSMITTER_MAX_NODES} nodes"
        )
    length = length if length is not None else 2 * node_count + 1
    if length < node_count:
        raise ScenarioValidationError(
            f"length {length} cannot isolate {node_count} rows (needs at least {node_count})"
        )

    rng = np.random.default_rng(seed)
    columns: list[np.ndarray] = []
    pending = set(range(node_count))

    # Each draw either isolates a pending row or spends a free slot, so the sum
    # below reaches ``length`` exactly.
    while len(columns) + len(pending) < length:
        column = (rng.random(node_count) < settings.TRANSMITTER_DENSITY).astype(np.uint8)
        if column.sum() == 1:
            pending.discard(int(np.flatnonzero(column)[0]))
        columns.append(column)

    # Repair: unit columns for rows still without a witness.
    for row in sorted(pending):
        unit = np.zeros(node_count, dtype=np.uint8)
        unit[row] = 1
        columns.append(unit)

    array = TransmitterArray(np.stack(columns, axis=1))
    logger.debug(f"Built transmitter {node_count}x{length} (seed {seed})")
    return array


def read_transmitter(path: Path) -> TransmitterArray:
    return TransmitterArray.from_rows(path.read_text(encoding="utf-8").splitlines())


def write_transmitter(array: TransmitterArray, path: Path) -> None:
    path.write_text("\n".join(array.to_rows()) + "\n", encoding="utf-8")
