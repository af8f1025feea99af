from fastapi import APIRouter

from app.api.v1 import bounds, scenarios, transmitters

api_router = APIRouter()

api_router.include_router(
    bounds.router,
    prefix="/bounds",
    tags=["Bounds"],
)

api_router.include_router(
    transmitters.router,
    prefix="/transmitters",
    tags=["Transmitters"],
)

api_router.include_router(
    scenarios.router,
    prefix="/scenarios",
    tags=["Scenarios"],
)
