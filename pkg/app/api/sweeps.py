# app/api/sweeps.py
import logging

from fastapi import APIRouter

from app.config import get_settings
from app.lab.checks import checks_help
from app.lab.sweeps import family_sweep
from app.models.schemas import SweepRequest, SweepResult

logger = logging.getLogger("dimforce.api.sweeps")
router = APIRouter()


@router.post("", response_model=SweepResult, summary="Run checks over a family")
def run(request: SweepRequest):
    """Single worker; the enumeration and brute-force caps bound the request."""
    logger.info("sweep %s checks=%s", request.family, ",".join(request.checks) or "all")
    return family_sweep(request.family, request.checks, labeled=request.labeled, caps=get_settings().caps(), workers=1)


@router.get("/checks", summary="Registered checks")
def list_checks():
    return {"checks": checks_help()}
