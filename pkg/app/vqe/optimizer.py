"""无导数经典优化: 自适应 Nelder-Mead，带停滞判据与随机重启"""
import logging
import math
from typing import Callable, List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import OptimizeResult, minimize

logger = logging.getLogger("vqe")


class OptimizerSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_iterations: int = Field(default=2000, ge=1)
    patience: int = Field(default=20, ge=1)
    tolerance: float = Field(default=1e-4, gt=0)
    restarts: int = Field(default=2, ge=0)


class LocalSearch(BaseModel):
    """一次局部搜索的结果"""

    theta: List[float]
    cost: float
    iterations: int
    trace: List[float]
    converged: bool


class _Stagnation:
    """连续 patience 次迭代相对改进都小于 tolerance 时停止"""

    def __init__(self, settings: OptimizerSettings):
        self.settings = settings
        self.trace: List[float] = []
        self.converged = False

    def __call__(self, intermediate_result: OptimizeResult) -> None:
        self.trace.append(float(intermediate_result.fun))
        window = self.settings.patience
        if len(self.trace) <= window:
            return
        old, new = self.trace[-window - 1], self.trace[-1]
        if old - new <= self.settings.tolerance * max(abs(old), 1e-12):
            self.converged = True
            raise StopIteration


def local_search(cost: Callable[[np.ndarray], float], theta0: np.ndarray, settings: OptimizerSettings) -> LocalSearch:
    stop = _Stagnation(settings)
    result = minimize(
        cost,
        theta0,
        method="Nelder-Mead",
        callback=stop,
        options={"maxiter": settings.max_iterations, "adaptive": True, "xatol": 1e-10, "fatol": 0.0},
    )
    converged = stop.converged or bool(result.success)
    if not converged:
        logger.debug(f"Nelder-Mead 未收敛: {result.message}")
    return LocalSearch(
        theta=[float(v) for v in result.x],
        cost=float(result.fun),
        iterations=len(stop.trace),
        trace=stop.trace,
        converged=converged,
    )


def minimize_with_restarts(
    cost: Callable[[np.ndarray], float],
    n_params: int,
    settings: OptimizerSettings,
    rng: np.random.Generator,
) -> LocalSearch:
    """1 + restarts 次局部搜索，初值在 [0, 2π) 内均匀随机，取代价最低的一次"""
    best = None
    for attempt in range(settings.restarts + 1):
        theta0 = rng.uniform(0.0, 2 * math.pi, size=n_params)
        run = local_search(cost, theta0, settings)
        logger.debug(f"第 {attempt + 1} 次搜索: 代价 {run.cost:.6g}, 迭代 {run.iterations}, 收敛 {run.converged}")
        if best is None or run.cost < best.cost:
            best = run
    return best
