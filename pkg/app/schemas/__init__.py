from app.schemas.api import (
    BoundsRequest,
    BoundsResponse,
    ScenarioDocumentRequest,
    ScenarioRunResponse,
    TransformResponse,
    TransmitterVerifyRequest,
    TransmitterVerifyResponse,
)
from app.schemas.reports import BoundsRow, CheckResult, RunVerdicts
from app.schemas.scenario import ScenarioFile, WirelineScenarioFile

__all__ = [
    "BoundsRequest",
    "BoundsResponse",
    "ScenarioDocumentRequest",
    "ScenarioRunResponse",
    "TransformResponse",
    "TransmitterVerifyRequest",
    "TransmitterVerifyResponse",
    "BoundsRow",
    "CheckResult",
    "RunVerdicts",
    "ScenarioFile",
    "WirelineScenarioFile",
]
