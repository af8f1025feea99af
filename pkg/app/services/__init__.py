from app.services.report_service import ReportService
from app.services.scenario_service import PreparedScenario, RunResult, ScenarioService
from app.services.transform_service import EquivalenceRun, TransformResult, TransformService

__all__ = [
    "ReportService",
    "PreparedScenario",
    "RunResult",
    "ScenarioService",
    "EquivalenceRun",
    "TransformResult",
    "TransformService",
]
