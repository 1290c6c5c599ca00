from fastapi import APIRouter
import logging

from app.service import HamiltonianRequest, HamiltonianResponse, build_hamiltonian
from ..errors import http_error

logger = logging.getLogger("api")

router = APIRouter(prefix="/api/hamiltonian", tags=["哈密顿量"])


@router.post("/build", response_model=HamiltonianResponse)
def build(req: HamiltonianRequest):
    """构造 QUBO (普通或零向量惩罚编码)，可选转换为 Ising 形式；document 为交换格式 JSON"""
    try:
        res = build_hamiltonian(req)
        logger.info(f"构造 {res.kind}: {res.n_vars} 个变量")
        return res
    except Exception as e:
        raise http_error(e, "构造哈密顿量")
