from app.engine.config import ExecutionConfig, HearingMode, SuccessModel
from app.engine.hearing import hearable_neighbors, proactive_phase, reactive_phase
from app.engine.orchestrator import RoundOrchestrator, run, step
from app.engine.radio import Resolution, Transmission, open_links, resolve_success

__all__ = [
    "ExecutionConfig",
    "HearingMode",
    "SuccessModel",
    "hearable_neighbors",
    "proactive_phase",
    "reactive_phase",
    "RoundOrchestrator",
    "run",
    "step",
    "Resolution",
    "Transmission",
    "open_links",
    "resolve_success",
]
