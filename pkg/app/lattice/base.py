from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from app.errors import ParameterError, RankDeficiencyError
from .exact import integer_rank, leading_minors_positive


class Basis(BaseModel):
    """格基: n×d 整数矩阵，每行一个基向量，行向量线性无关"""

    model_config = ConfigDict(frozen=True)

    rows: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_rows(self) -> "Basis":
        if not self.rows:
            raise ValueError("基至少需要一行")
        d = len(self.rows[0])
        if any(len(r) != d for r in self.rows):
            raise ValueError("所有行的长度必须一致")
        if d < len(self.rows):
            raise ValueError(f"秩 {len(self.rows)} 不能超过维数 {d}")
        if integer_rank(self.rows) < len(self.rows):
            raise RankDeficiencyError("基向量线性相关 (Gram 行列式为 0)")
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Basis":
        """从用户输入构造，校验失败时抛出 ParameterError"""
        try:
            return cls(rows=rows)
        except ValidationError as e:
            raise ParameterError(f"非法格基: {e.errors()[0]['msg']}") from e

    @classmethod
    def trusted(cls, rows: Sequence[Sequence[int]]) -> "Basis":
        """跳过校验，仅用于由幺模变换得到的行"""
        return cls.model_construct(rows=tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def d(self) -> int:
        return len(self.rows[0])

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.rows]


class GramMatrix(BaseModel):
    """Gram 矩阵 G = B·Bᵀ，对称正定"""

    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_entries(self) -> "GramMatrix":
        n = len(self.entries)
        if n == 0 or any(len(r) != n for r in self.entries):
            raise ValueError("Gram 矩阵必须是非空方阵")
        if any(self.entries[i][j] != self.entries[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram 矩阵必须对称")
        if not leading_minors_positive(self.entries):
            raise ValueError("Gram 矩阵必须正定")
        return self

    @classmethod
    def trusted(cls, entries: Sequence[Sequence[int]]) -> "GramMatrix":
        return cls.model_construct(entries=tuple(tuple(r) for r in entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    def quadratic_form(self, x: Sequence[int]) -> int:
        """精确计算 x·G·xᵀ"""
        total = 0
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.entries[i]
            total += xi * sum(row[j] * xj for j, xj in enumerate(x) if xj)
        return total


class DualBasis(BaseModel):
    """对偶基 (B·Bᵀ)⁻¹·B，精确有理数"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rows: Tuple[Tuple[Fraction, ...], ...]

    def squared_norms(self) -> List[Fraction]:
        return [sum(x * x for x in r) for r in self.rows]


class GsoData(BaseModel):
    """浮点 Gram-Schmidt 正交化结果"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vectors: np.ndarray
    mu: np.ndarray
    sq_norms: np.ndarray
