"""用 VQE 回答约化算法中的 SVP 预言机调用 (小秩投影格)"""
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence

from app.encoding import build_qubo, encode_integers, qubit_count, qubo_to_ising
from app.encoding.bounds import dual_bounds_from_gram
from app.encoding.base import BoundsVector
from app.enumeration import canonical_sign, quadratic_form
from app.reduction.base import OracleCall, SvpOracle
from .ansatz import apply_ansatz, check_qubits
from .base import AnsatzSpec, CostMode
from .cost import zero_mask
from .engine import optimize, sampled_vectors
from .optimizer import OptimizerSettings

logger = logging.getLogger("vqe")


class VqeOracle(SvpOracle):
    """系数界取自 Gram 矩阵的对偶引理，plain 编码，排除零向量的 CVaR 代价。

    返回最终态采样中半径内范数最小的非零系数向量；启发式，可能漏解。
    """

    name = "vqe"

    def __init__(
        self,
        mode: CostMode = CostMode(evaluation="exact"),
        settings: OptimizerSettings = OptimizerSettings(),
        layers: int = 2,
        shots: int = 5000,
        seed: int = 0,
    ):
        super().__init__()
        self.mode = mode
        self.settings = settings
        self.layers = layers
        self.shots = shots
        self.seed = seed

    def solve(self, entries: Sequence[Sequence], radius, bounds: Optional[Sequence[int]] = None) -> Optional[List[int]]:
        exact = [[Fraction(v) for v in row] for row in entries]
        box = BoundsVector(m=tuple(bounds)) if bounds is not None else dual_bounds_from_gram(exact, float(radius))
        n_bits = qubit_count(box)
        self.history.append(OracleCall(rank=len(exact), radius=float(radius), qubits=n_bits, found=False))
        if n_bits == 0:
            return None
        check_qubits(n_bits)
        enc = encode_integers(box, "plain")
        H = qubo_to_ising(build_qubo(exact, enc))
        spec = AnsatzSpec(n_qubits=n_bits, layers=self.layers)
        # 每次调用使用不同但确定的种子
        seed = self.seed + len(self.history)
        result = optimize(H, spec, self.mode, self.settings, seed=seed, zero_set=zero_mask(enc))
        state = apply_ansatz(spec, result.theta)
        limit = Fraction(radius) ** 2
        best = None
        for x in sampled_vectors(state, self.shots, enc, seed=seed):
            if not any(x):
                continue
            # 非本原向量除以公因子后更短且仍在格中
            g = math.gcd(*x)
            x = tuple(v // g for v in x)
            norm = quadratic_form(exact, x)
            key = (norm, canonical_sign(x))
            if norm <= limit and (best is None or key < best):
                best = key
        if best is None:
            logger.debug(f"VQE 预言机在半径 {float(radius):.4f} 内没有采到非零向量 (N={n_bits})")
            return None
        self.history[-1] = self.history[-1].model_copy(update={"found": True})
        return list(best[1])
