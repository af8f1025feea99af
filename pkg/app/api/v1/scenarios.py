from fastapi import APIRouter, HTTPException

from app.exceptions import ScenarioValidationError, SimulationError
from app.schemas.api import ScenarioDocumentRequest, ScenarioRunResponse, TransformResponse
from app.schemas.scenario import ScenarioFile, WirelineScenarioFile
from app.services.scenario_service import ScenarioService
from app.services.transform_service import TransformService
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

router = APIRouter()


@router.post("/run", response_model=ScenarioRunResponse)
def run_scenario(request: ScenarioDocumentRequest):
    """Run a radio scenario document and return its verdicts.

    Declared sync so the simulation runs in the threadpool.
    """
    service = ScenarioService()
    try:
        scenario = service.parse(request.document, source="request")
        if not isinstance(scenario, ScenarioFile):
            raise ScenarioValidationError("request: /run expects a radio scenario, use /transform")
        result = service.run(scenario, seed=request.seed, horizon=request.horizon)
    except ScenarioValidationError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except SimulationError as e:
        logger.warning(f"Scenario run rejected: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))

    verdicts = result.verdicts.model_dump(mode="json")
    verdicts.update(result.extras)
    return ScenarioRunResponse(scenario=result.scenario.name, passed=result.passed, verdicts=verdicts)


@router.post("/transform", response_model=TransformResponse)
def transform_scenario(request: ScenarioDocumentRequest):
    """Transform a wireline scenario into its equivalent radio scenario."""
    try:
        scenario = ScenarioService().parse(request.document, source="request")
        if not isinstance(scenario, WirelineScenarioFile):
            raise ScenarioValidationError("request: /transform expects a wireline scenario")
        result = TransformService().transform(scenario)
    except ScenarioValidationError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except SimulationError as e:
        raise HTTPException(status_code=400, detail=str(e))

    return TransformResponse(scenario=result.to_yaml(), manifest=result.manifest)
