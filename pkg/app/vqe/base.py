import math
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# 所有测量结果都解码为零向量时的代价
SENTINEL = 1e18
NORM_TOLERANCE = 1e-10

Entangler = Literal["linear", "ring"]
Variant = Literal["mean", "cvar", "zero-excluded-mean", "zero-excluded-cvar"]
Evaluation = Literal["sampled", "exact"]


def bitstring_index(bits: str) -> int:
    """比特串第 k 个字符对应计算基下标的第 k 位"""
    return sum(1 << k for k, ch in enumerate(bits) if ch == "1")


def index_bitstring(index: int, n_bits: int) -> str:
    return "".join("1" if index >> k & 1 else "0" for k in range(n_bits))


class AnsatzSpec(BaseModel):
    """硬件高效拟设: Ry 层 + L 次 (CZ 纠缠层 + Ry 层)"""

    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(ge=1)
    layers: int = Field(default=2, ge=0)
    entangler: Entangler = "linear"

    @property
    def n_params(self) -> int:
        return self.n_qubits * (self.layers + 1)

    def pairs(self) -> List[Tuple[int, int]]:
        pairs = [(i, i + 1) for i in range(self.n_qubits - 1)]
        if self.entangler == "ring" and self.n_qubits > 2:
            pairs.append((self.n_qubits - 1, 0))
        return pairs


class StateVector(BaseModel):
    """2^N 个复振幅，第 k 个量子比特对应下标的第 k 位"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    amplitudes: np.ndarray

    @model_validator(mode="after")
    def _check(self) -> "StateVector":
        size = self.amplitudes.shape[0]
        if self.amplitudes.ndim != 1 or size & (size - 1):
            raise ValueError("振幅数组长度必须是 2 的幂")
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"态矢量未归一化: ‖ψ‖² = {norm}")
        return self

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1

    def probabilities(self) -> np.ndarray:
        p = np.abs(self.amplitudes) ** 2
        return p / p.sum()


class CostMode(BaseModel):
    """代价变体与评估方式；sampled 模式每次评估抽取 shots 次测量"""

    model_config = ConfigDict(frozen=True)

    variant: Variant = "zero-excluded-cvar"
    alpha: float = Field(default=0.175, gt=0, le=1)
    evaluation: Evaluation = "sampled"
    shots: int = Field(default=512, ge=1)

    @property
    def excludes_zero(self) -> bool:
        return self.variant.startswith("zero-excluded")

    @property
    def uses_cvar(self) -> bool:
        return self.variant.endswith("cvar")

    def tail_count(self, kept: int) -> int:
        """⌈α·kept⌉ (至少 1)"""
        return max(1, math.ceil(self.alpha * kept - 1e-9))


class VqeRunResult(BaseModel):
    """一次 VQE 运行的结果记录"""

    seed: int
    n_qubits: int
    rank: Optional[int] = None
    theta: List[float]
    iterations: int
    evaluations: int
    cost_trace: List[float]
    final_cost: float
    converged: bool
    overlap: Optional[float] = Field(default=None, ge=0, le=1)
    best_vector: Optional[Tuple[int, ...]] = None
    best_norm: Optional[int] = None
    shortest_norm: Optional[int] = None

    @property
    def success(self) -> bool:
        """最终采样中找到了最短非零向量"""
        return (
            self.best_vector is not None
            and any(self.best_vector)
            and self.shortest_norm is not None
            and self.best_norm == self.shortest_norm
        )

    def csv_row(self) -> dict:
        return {
            "seed": self.seed,
            "rank": self.rank if self.rank is not None else "",
            "n_qubits": self.n_qubits,
            "iterations": self.iterations,
            "evaluations": self.evaluations,
            "final_cost": self.final_cost,
            "converged": int(self.converged),
            "overlap": self.overlap if self.overlap is not None else "",
            "best_norm": self.best_norm if self.best_norm is not None else "",
            "shortest_norm": self.shortest_norm if self.shortest_norm is not None else "",
            "success": int(self.success),
        }
