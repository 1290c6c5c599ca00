from typing import Iterable, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator


class EnumResult(BaseModel):
    """枚举结果: 系数向量 x 及其精确平方范数 x·G·xᵀ"""

    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[int, ...]
    squared_norm: int

    @model_validator(mode="after")
    def _nonzero(self) -> "EnumResult":
        if not any(self.coefficients):
            raise ValueError("零向量不是合法的枚举结果")
        return self


def canonical_sign(x: Sequence[int]) -> Tuple[int, ...]:
    """翻转符号使第一个非零分量为正"""
    for v in x:
        if v != 0:
            return tuple(x) if v > 0 else tuple(-a for a in x)
    return tuple(x)


def pick_canonical(candidates: Iterable[Sequence[int]]) -> Tuple[int, ...]:
    """等长最短向量的确定性选择: 规范符号后字典序最小"""
    return min(canonical_sign(x) for x in candidates)
