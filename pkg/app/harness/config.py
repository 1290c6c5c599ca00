"""实验配置: JSON 文件与命令行参数共同决定，所有随机量都由 seed 派生"""
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from app.encoding.base import Scheme
from app.encoding.bounds import MappingSpec, Strategy
from app.errors import ParameterError
from app.lattice import DEFAULT_Q
from app.reduction import DEFAULT_DELTA
from app.vqe import AnsatzSpec, CostMode, OptimizerSettings
from app.vqe.base import Entangler, Evaluation, Variant

logger = logging.getLogger("harness")


class InstanceSettings(BaseModel):
    """q 元格实例: d = n + extra_dim，k 缺省为 d // 2"""

    q: int = DEFAULT_Q
    extra_dim: int = Field(default=10, ge=0)
    k: Optional[int] = None

    def shape(self, n: int) -> Tuple[int, int]:
        d = n + self.extra_dim
        return d, self.k if self.k is not None else d // 2


class ExperimentConfig(BaseModel):
    seed: int = Field(default=0, ge=0, lt=2**64)
    ranks: List[int] = Field(default_factory=lambda: [15, 20, 25])
    count: int = Field(default=256, ge=1)
    # 包含概率实验: 量子比特预算 (None 表示每个系数 1 个比特) 与映射策略
    budgets: List[Optional[int]] = Field(default_factory=lambda: [None])
    strategies: List[Strategy] = Field(default_factory=lambda: ["uniform", "uniform-random", "dual-scaled"])
    # 比特数缩放实验
    reductions: List[str] = Field(default_factory=lambda: ["lll"])
    repeats: int = Field(default=5, ge=1)
    timeout: Optional[float] = Field(default=None, gt=0)
    delta: float = DEFAULT_DELTA
    # VQE
    mapping: MappingSpec = MappingSpec()
    scheme: Scheme = "plain"
    penalty: Optional[int] = None
    cost_variant: Variant = "zero-excluded-cvar"
    alpha: float = Field(default=0.175, gt=0, le=1)
    alphas: List[float] = Field(default_factory=lambda: [0.05, 0.1, 0.175, 0.25, 0.5, 0.75, 1.0])
    evaluation: Evaluation = "sampled"
    shots: int = Field(default=512, ge=1)
    layers: int = Field(default=2, ge=0)
    entangler: Entangler = "linear"
    samples: int = Field(default=5000, ge=1)
    optimizer: OptimizerSettings = OptimizerSettings()
    instance: InstanceSettings = InstanceSettings()
    # 输出与并行
    out_dir: str = "results"
    jobs: Optional[int] = Field(default=None, ge=1)

    def cost_mode(self, alpha: Optional[float] = None) -> CostMode:
        return CostMode(
            variant=self.cost_variant,
            alpha=self.alpha if alpha is None else alpha,
            evaluation=self.evaluation,
            shots=self.shots,
        )

    def ansatz(self, n_qubits: int) -> AnsatzSpec:
        return AnsatzSpec(n_qubits=n_qubits, layers=self.layers, entangler=self.entangler)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ExperimentConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ParameterError(f"无法读取配置文件 {path}: {e}") from e
        return cls.parse(text)

    @classmethod
    def parse(cls, text: str) -> "ExperimentConfig":
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise ParameterError(f"配置文件格式错误: {e}") from e

    def merged(self, **overrides) -> "ExperimentConfig":
        """命令行显式给出的参数覆盖配置文件，None 表示未给出"""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return ExperimentConfig.model_validate(data)
        except ValidationError as e:
            raise ParameterError(f"参数不合法: {e}") from e

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.model_dump_json(indent=2), encoding="utf-8")
        return path
