from fastapi import APIRouter
import logging

from app.service import (
    BasisResponse,
    BoundsResponse,
    GenerateRequest,
    MappingInput,
    ReduceRequest,
    ReduceResponse,
    generate_lattice,
    lattice_bounds,
    reduce_lattice,
)
from ..errors import http_error

# 配置日志
logger = logging.getLogger("api")

# 创建路由器
router = APIRouter(prefix="/api/lattice", tags=["格"])


@router.post("/generate", response_model=BasisResponse)
def generate(req: GenerateRequest):
    """生成 q-ary 格基，给定 n 时做 LLL 并截取前 n 行"""
    try:
        res = generate_lattice(req)
        logger.info(f"生成格基: {res.n}×{res.d}")
        return res
    except Exception as e:
        raise http_error(e, "生成格基")


@router.post("/reduce", response_model=ReduceResponse)
def reduce(req: ReduceRequest):
    """格基约化 (lll | bkz | hkz | pseudo-hkz | dual-hkz)"""
    try:
        res = reduce_lattice(req)
        logger.info(f"{req.method} 约化完成, log2 正交缺陷 {res.log2_defect:.3f}")
        return res
    except Exception as e:
        raise http_error(e, "约化格基")


@router.post("/bounds", response_model=BoundsResponse)
def bounds(req: MappingInput):
    """系数界与量子比特数"""
    try:
        return lattice_bounds(req)
    except Exception as e:
        raise http_error(e, "计算系数界")
