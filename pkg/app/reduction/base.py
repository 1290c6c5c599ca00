from abc import ABC, abstractmethod
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.errors import ParameterError
from app.lattice import Basis, gram


class ReductionReport(BaseModel):
    """约化报告: 输出基、交换/轮数、正交缺陷、耗时"""

    model_config = ConfigDict(frozen=True)

    basis: Basis
    swaps: int = 0
    tours: int = 0
    defect: float
    log2_defect: float
    wall_time: float


class OracleCall(BaseModel):
    """一次预言机调用的记录"""

    rank: int
    radius: float
    qubits: Optional[int] = None
    found: bool


class SvpOracle(ABC):
    """SVP 预言机基类: 返回半径内范数最小的非零系数向量，球内无非零点时返回 None。

    子类实现 ``solve``；BKZ/HKZ 的投影块通过 ``solve_projected`` 传入浮点 GSO。
    """

    name = "base"

    def __init__(self):
        self.history: List[OracleCall] = []

    @abstractmethod
    def solve(
        self,
        entries: Sequence[Sequence],
        radius: float,
        bounds: Optional[Sequence[int]] = None,
    ) -> Optional[List[int]]:
        """在 Gram 矩阵 entries 描述的格中求解，bounds 为可选的系数盒"""
        pass

    def solve_projected(self, mu: np.ndarray, r: np.ndarray, radius: float) -> Optional[List[int]]:
        """投影块: 由 μ 与 ‖b*_i‖² 重建浮点 Gram 矩阵后调用 solve"""
        lower = np.tril(np.asarray(mu, dtype=np.float64), -1) + np.eye(len(r))
        entries = (lower * np.asarray(r, dtype=np.float64)) @ lower.T
        return self.solve(entries.tolist(), radius)

    def __call__(self, B: Basis, radius: float) -> Optional[List[int]]:
        return self.solve(gram(B).entries, radius)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """返回 (g, s, t) 使 s·a + t·b = g ≥ 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def complete_with(rows: Sequence[Sequence[int]], coeffs: Sequence[int]) -> List[List[int]]:
    """幺模补全: 返回与 rows 张成同一格、首行等于 Σ coeffs_i·rows_i 的新行组。

    coeffs 必须是本原的 (各分量 gcd 为 1)，最短向量的系数总满足这一点。
    """
    x = list(coeffs)
    g = 0
    for v in x:
        g = gcd(g, v)
    if g != 1:
        raise ParameterError(f"系数向量不是本原的 (gcd={g})")
    out = [list(r) for r in rows]
    for j in range(1, len(x)):
        b = x[j]
        if b == 0:
            continue
        a = x[0]
        g, s, t = extended_gcd(a, b)
        r0, rj = out[0], out[j]
        # [[a/g, b/g], [-t, s]] 的行列式为 1
        out[0] = [(a // g) * u + (b // g) * v for u, v in zip(r0, rj)]
        out[j] = [-t * u + s * v for u, v in zip(r0, rj)]
        x[0], x[j] = g, 0
    if x[0] == -1:
        out[0] = [-u for u in out[0]]
    return out
