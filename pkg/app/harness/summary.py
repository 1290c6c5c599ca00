"""VQE 批量实验的汇总统计"""
import math
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field

from app.vqe import VqeRunResult


def success_probability(overlaps: Sequence[float], samples: int) -> float:
    """mean(1 - (1 - o)^S): 采样 S 次至少得到一次目标的概率"""
    if not overlaps:
        return 0.0
    values = np.clip(np.asarray(overlaps, dtype=np.float64), 0.0, 1.0)
    return float(np.mean(1.0 - (1.0 - values) ** samples))


class SummaryRow(BaseModel):
    label: Dict[str, Union[int, float, str]]
    count: int
    errors: int = 0
    non_converged: int = 0
    overlaps: List[float] = Field(default_factory=list)
    iterations: List[int] = Field(default_factory=list)
    samples: int = 5000

    @property
    def mean_overlap(self) -> float:
        return float(np.mean(self.overlaps)) if self.overlaps else 0.0

    @property
    def median_overlap(self) -> float:
        return float(np.median(self.overlaps)) if self.overlaps else 0.0

    @property
    def std_overlap(self) -> float:
        return float(np.std(self.overlaps)) if self.overlaps else 0.0

    @property
    def mean_iters(self) -> float:
        return float(np.mean(self.iterations)) if self.iterations else 0.0

    @property
    def std_iters(self) -> float:
        return float(np.std(self.iterations)) if self.iterations else 0.0

    @property
    def p_success(self) -> float:
        return success_probability(self.overlaps, self.samples)

    @property
    def samples_to_solution(self) -> float:
        """1 / 平均重叠度"""
        mean = self.mean_overlap
        return 1.0 / mean if mean > 0 else math.inf

    def record(self) -> dict:
        return {
            **self.label,
            "mean_overlap": self.mean_overlap,
            "median_overlap": self.median_overlap,
            "std_overlap": self.std_overlap,
            "mean_iters": self.mean_iters,
            "std_iters": self.std_iters,
            f"p{self.samples}": self.p_success,
            "samples_to_solution": self.samples_to_solution,
            "count": self.count,
            "errors": self.errors,
            "non_converged": self.non_converged,
        }


def summarize(
    label: Dict[str, Union[int, float, str]],
    results: Sequence[Optional[VqeRunResult]],
    samples: int,
) -> SummaryRow:
    """results 中 None 表示该实例出错；不收敛的运行照常计入"""
    ok = [r for r in results if r is not None]
    return SummaryRow(
        label=label,
        count=len(results),
        errors=len(results) - len(ok),
        non_converged=sum(1 for r in ok if not r.converged),
        overlaps=[r.overlap or 0.0 for r in ok],
        iterations=[r.iterations for r in ok],
        samples=samples,
    )


class CampaignSummary(BaseModel):
    rows: List[SummaryRow] = Field(default_factory=list)

    def records(self) -> List[dict]:
        return [row.record() for row in self.rows]
