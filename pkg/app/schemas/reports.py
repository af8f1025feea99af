from typing import Any, Optional

from pydantic import BaseModel


class CheckResult(BaseModel):
    """Outcome of one requested analysis."""
    name: str
    ok: bool
    detail: dict[str, Any] = {}


class RunVerdicts(BaseModel):
    """Everything a run decided, written to verdicts.json."""
    scenario: str
    expect: Optional[str] = None
    observed: Optional[str] = None
    passed: bool
    seed: int
    horizon: int
    injected: int
    delivered: int
    max_queue: int
    checks: list[CheckResult] = []


class BoundsRow(BaseModel):
    """One line of bounds.csv."""
    scenario: str
    policy: str
    mode: str
    h: int
    r: str
    b: int
    d: int
    queue_bound: str
    observed_max: int
    verdict: str
