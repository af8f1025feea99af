from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class BoundsRequest(BaseModel):
    """Schema for a closed-form bound query."""
    policy: Literal["sis", "lis", "SIS", "LIS"]
    b: int = Field(..., ge=1)
    r: str
    h: int = Field(..., ge=1)
    d: int = Field(..., ge=1)


class BoundsResponse(BaseModel):
    policy: str
    b: int
    r: str
    h: int
    d: int
    k_sequence: Optional[list[str]] = None
    queue_bound: str
    queue_bound_float: float
    queue_packets: int
    delay_bound: str
    delay_bound_float: float


class TransmitterVerifyRequest(BaseModel):
    rows: list[str] = Field(..., min_length=1)


class TransmitterVerifyResponse(BaseModel):
    ok: bool
    node_count: int
    length: int
    witnesses: dict[int, int] = {}
    failing_row: Optional[int] = None


class ScenarioDocumentRequest(BaseModel):
    """A scenario YAML document plus optional run overrides."""
    document: str
    seed: Optional[int] = None
    horizon: Optional[int] = Field(default=None, ge=0)


class ScenarioRunResponse(BaseModel):
    scenario: str
    passed: bool
    verdicts: dict[str, Any]


class TransformResponse(BaseModel):
    scenario: str
    manifest: dict[str, Any]
