from fastapi import APIRouter, HTTPException

from app.analysis.bounds import bounds_for, sis_k_sequence
from app.schemas.api import BoundsRequest, BoundsResponse
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

router = APIRouter()


@router.post("", response_model=BoundsResponse)
async def compute_bounds(request: BoundsRequest):
    """Evaluate the closed-form queue and delay bounds for SIS or LIS."""
    policy = request.policy.upper()
    try:
        bounds = bounds_for(policy, request.b, request.r, request.h, request.d)
        ks = sis_k_sequence(request.b, request.r, request.h, request.d) if policy == "SIS" else None
    except (ValueError, ZeroDivisionError) as e:
        logger.warning(f"Rejected bounds query for {policy}: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))

    params = bounds.params
    return BoundsResponse(
        policy=policy,
        b=params.b,
        r=str(params.r),
        h=params.h,
        d=params.d,
        k_sequence=[str(k) for k in ks] if ks is not None else None,
        queue_bound=str(bounds.queue_bound),
        queue_bound_float=float(bounds.queue_bound),
        queue_packets=bounds.queue_packets,
        delay_bound=str(bounds.delay_bound),
        delay_bound_float=float(bounds.delay_bound),
    )
