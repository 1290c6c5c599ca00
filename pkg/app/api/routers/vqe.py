from fastapi import APIRouter
import logging

from app.service import VqeRequest, run_vqe_job
from app.vqe import VqeRunResult
from ..errors import http_error

logger = logging.getLogger("api")

router = APIRouter(prefix="/api/vqe", tags=["VQE"])


@router.post("/run", response_model=VqeRunResult)
def run(req: VqeRequest):
    """对给定格基运行一次 VQE，返回运行记录"""
    try:
        return run_vqe_job(req)
    except Exception as e:
        raise http_error(e, "运行 VQE")
