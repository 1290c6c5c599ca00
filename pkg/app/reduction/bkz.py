"""BKZ-β 分块约化 (Schnorr-Euchner 轮次，无剪枝)"""
import logging
import math
import time
from typing import Optional

from app.errors import ParameterError
from app.lattice import Basis
from .base import ReductionReport, SvpOracle
from .lll import DEFAULT_DELTA, LllEngine, make_report

logger = logging.getLogger("reduction")

MAX_TOURS = 16
# 投影范数至少缩短这一比例才插入
IMPROVEMENT = 1e-9


def projected_norm(engine: LllEngine, k: int, coeffs) -> float:
    """Σ x_i b_{k+i} 在 b_0..b_{k-1} 正交补上的平方范数"""
    size = len(coeffs)
    total = 0.0
    for i in range(size):
        y = coeffs[i] + sum(coeffs[j] * engine.mu[k + j, k + i] for j in range(i + 1, size))
        total += y * y * engine.r[k + i]
    return total


def bkz(
    B: Basis,
    beta: int,
    oracle: SvpOracle,
    delta: float = DEFAULT_DELTA,
    max_tours: int = MAX_TOURS,
    deadline: Optional[float] = None,
) -> ReductionReport:
    """BKZ-β: 逐块求投影格最短向量并插入，直到出现无改动的一轮或达到轮数上限"""
    n = B.n
    if not 2 <= beta <= n:
        raise ParameterError(f"块大小 beta 必须在 2..{n} 之间，实际 {beta}")
    started = time.perf_counter()
    engine = LllEngine(B.rows, delta=delta, deadline=deadline)
    engine.run()
    tours = 0
    for _ in range(max_tours):
        tours += 1
        clean = True
        for k in range(n - 1):
            engine.check_deadline()
            end = min(k + beta, n)
            radius = math.sqrt(engine.r[k]) * (1 + IMPROVEMENT)
            coeffs = oracle.solve_projected(engine.mu[k:end, k:end], engine.r[k:end], radius)
            if coeffs is None:
                continue
            if projected_norm(engine, k, coeffs) < engine.r[k] * (1 - IMPROVEMENT):
                engine.insert(k, end, coeffs)
                engine.run()
                clean = False
        logger.debug(f"BKZ-{beta} 第 {tours} 轮结束, {'无改动' if clean else '有插入'}")
        if clean:
            break
    else:
        logger.info(f"BKZ-{beta} 达到轮数上限 {max_tours}")
    return make_report(engine.basis(), started, swaps=engine.swaps, tours=tours)
