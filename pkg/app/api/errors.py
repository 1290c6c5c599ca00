import logging

from fastapi import HTTPException
from pydantic import ValidationError

from app.errors import (
    BudgetExceededError,
    InfeasibleRadiusError,
    InstabilityError,
    LengthMismatchError,
    ParameterError,
    RankDeficiencyError,
    UnsupportedBoundError,
)

logger = logging.getLogger("api")

CLIENT_ERRORS = (ParameterError, RankDeficiencyError, LengthMismatchError, UnsupportedBoundError, ValidationError)
UNPROCESSABLE = (BudgetExceededError, InfeasibleRadiusError, InstabilityError)


def http_error(e: Exception, action: str) -> HTTPException:
    """领域异常映射为 HTTP 状态码: 参数类 400，预算/不可行 422，其余 500"""
    if isinstance(e, CLIENT_ERRORS):
        logger.warning(f"{action}参数错误: {e}")
        return HTTPException(status_code=400, detail=str(e))
    if isinstance(e, UNPROCESSABLE):
        logger.warning(f"{action}无法完成: {e}")
        return HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")
    logger.exception(f"{action}时出错")
    return HTTPException(status_code=500, detail=f"{action}时出错: {e}")
