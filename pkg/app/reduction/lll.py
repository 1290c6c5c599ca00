"""LLL 约化: 精确整数行 + 浮点 GSO，每 n² 次交换从头重算一次 GSO"""
import logging
import time
from typing import List, Optional, Sequence

import numpy as np

from app.errors import InstabilityError, ParameterError, ReductionTimeoutError
from app.lattice import Basis, gso_coefficients, log2_orthogonality_defect, orthogonality_defect
from .base import ReductionReport, complete_with

logger = logging.getLogger("reduction")

DEFAULT_DELTA = 0.99
ETA = 0.5 + 1e-9
# 一次消去的系数超过该值时从精确内积刷新该行的 μ
REFRESH_THRESHOLD = 2**20


class LllEngine:
    """LLL 状态机: 行为精确整数 (object 数组)，μ 与 ‖b*_i‖² 为 float64"""

    def __init__(self, rows: Sequence[Sequence[int]], delta: float = DEFAULT_DELTA, deadline: Optional[float] = None):
        if not 0.25 < delta < 1:
            raise ParameterError(f"LLL 参数 delta 必须在 (1/4, 1) 内，实际 {delta}")
        self.delta = delta
        self.deadline = deadline
        self.B = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            self.B[i, :] = [int(x) for x in row]
        self.n = len(rows)
        self.swaps = 0
        self.recompute()

    def recompute(self) -> None:
        """由精确 Gram 矩阵重算全部 GSO 数据"""
        G = self.B.dot(self.B.T)
        self.mu, self.r = gso_coefficients(G.tolist())

    def refresh_row(self, k: int) -> None:
        """只重算第 k 行的 μ 与 ‖b*_k‖²"""
        g = [int(np.dot(self.B[k], self.B[j])) for j in range(k + 1)]
        inner = np.zeros(k + 1)
        for j in range(k):
            inner[j] = float(g[j]) - np.dot(self.mu[j, :j], inner[:j])
            self.mu[k, j] = inner[j] / self.r[j]
        self.r[k] = float(g[k]) - np.dot(self.mu[k, :k], inner[:k])
        if self.r[k] <= 0:
            raise InstabilityError(f"第 {k} 个 GSO 平方范数数值为零")

    def check_deadline(self) -> None:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise ReductionTimeoutError("约化超过截止时间")

    def size_reduce_row(self, k: int) -> None:
        """使 |μ_kj| ≤ 1/2 (j < k)"""
        while True:
            large = False
            for j in range(k - 1, -1, -1):
                m = float(self.mu[k, j])
                if abs(m) > ETA:
                    c = int(round(m))
                    self.B[k] = self.B[k] - c * self.B[j]
                    self.mu[k, :j] -= c * self.mu[j, :j]
                    self.mu[k, j] -= c
                    if abs(c) > REFRESH_THRESHOLD:
                        large = True
            if not large:
                return
            self.refresh_row(k)

    def swap(self, k: int) -> None:
        """交换第 k-1 与 k 行并就地更新 GSO"""
        m = float(self.mu[k, k - 1])
        r_prev, r_k = float(self.r[k - 1]), float(self.r[k])
        new_prev = r_k + m * m * r_prev
        if new_prev <= 0:
            raise InstabilityError("交换后 GSO 平方范数非正")
        self.mu[k, k - 1] = m * r_prev / new_prev
        self.r[k] = r_prev * r_k / new_prev
        self.r[k - 1] = new_prev
        self.B[[k - 1, k]] = self.B[[k, k - 1]]
        head = self.mu[k - 1, : k - 1].copy()
        self.mu[k - 1, : k - 1] = self.mu[k, : k - 1]
        self.mu[k, : k - 1] = head
        if k + 1 < self.n:
            t = self.mu[k + 1 :, k].copy()
            self.mu[k + 1 :, k] = self.mu[k + 1 :, k - 1] - m * t
            self.mu[k + 1 :, k - 1] = t + self.mu[k, k - 1] * self.mu[k + 1 :, k]
        self.swaps += 1
        if self.swaps % (self.n * self.n) == 0:
            self.recompute()

    def lovasz_fails(self, k: int) -> bool:
        m = self.mu[k, k - 1]
        return self.delta * self.r[k - 1] > self.r[k] + m * m * self.r[k - 1]

    def _pass(self, lo: int) -> None:
        if lo >= 1:
            self.size_reduce_row(lo)
        k = lo + 1
        while k < self.n:
            self.check_deadline()
            self.size_reduce_row(k)
            if self.lovasz_fails(k):
                self.swap(k)
                k = max(k - 1, lo + 1)
            else:
                k += 1

    def is_reduced(self, lo: int = 0) -> bool:
        for k in range(1, self.n):
            if k >= lo and np.any(np.abs(self.mu[k, :k]) > ETA):
                return False
            if k - 1 >= lo and self.lovasz_fails(k):
                return False
        return True

    def run(self, lo: int = 0) -> None:
        """LLL 主循环；lo 之前的行被冻结 (不参与交换)"""
        for _ in range(4):
            self._pass(lo)
            self.recompute()
            if self.is_reduced(lo):
                return
        logger.warning("LLL 多次复核后仍未满足约化条件，返回当前结果")

    def size_reduce_all(self) -> None:
        for k in range(1, self.n):
            self.size_reduce_row(k)

    def insert(self, k: int, end: int, coeffs: Sequence[int]) -> None:
        """在位置 k 插入 Σ coeffs_i·b_{k+i}，对 k..end-1 行做幺模补全"""
        block = [list(self.B[i]) for i in range(k, end)]
        for offset, row in enumerate(complete_with(block, coeffs)):
            self.B[k + offset, :] = row
        self.recompute()

    def rows(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.B]

    def basis(self) -> Basis:
        return Basis.trusted(self.rows())


def make_report(basis: Basis, started: float, swaps: int = 0, tours: int = 0) -> ReductionReport:
    return ReductionReport(
        basis=basis,
        swaps=swaps,
        tours=tours,
        defect=orthogonality_defect(basis),
        log2_defect=log2_orthogonality_defect(basis),
        wall_time=time.perf_counter() - started,
    )


def size_reduce(B: Basis) -> Basis:
    """尺寸约化: 所有 |μ_ij| ≤ 1/2"""
    engine = LllEngine(B.rows)
    engine.size_reduce_all()
    return engine.basis()


def lll(B: Basis, delta: float = DEFAULT_DELTA, deadline: Optional[float] = None) -> ReductionReport:
    """LLL 约化，返回约化报告"""
    started = time.perf_counter()
    engine = LllEngine(B.rows, delta=delta, deadline=deadline)
    engine.run()
    report = make_report(engine.basis(), started, swaps=engine.swaps)
    logger.debug(f"LLL 完成: n={B.n}, 交换 {engine.swaps} 次, log2 缺陷 {report.log2_defect:.2f}")
    return report
