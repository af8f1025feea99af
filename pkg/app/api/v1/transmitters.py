from fastapi import APIRouter, HTTPException

from app.exceptions import SimulationError
from app.oracles.transmitters import TransmitterArray
from app.schemas.api import TransmitterVerifyRequest, TransmitterVerifyResponse

router = APIRouter()


@router.post("/verify", response_model=TransmitterVerifyResponse)
async def verify_transmitter(request: TransmitterVerifyRequest):
    """Check that every node transmits alone in at least one column."""
    try:
        array = TransmitterArray.from_rows(request.rows)
    except SimulationError as e:
        raise HTTPException(status_code=422, detail=str(e))

    verdict = array.verify()
    return TransmitterVerifyResponse(
        ok=verdict.ok,
        node_count=array.node_count,
        length=array.length,
        witnesses=dict(verdict.witnesses),
        failing_row=verdict.failing_row,
    )
