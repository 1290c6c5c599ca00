"""对角哈密顿量的能量与 VQE 代价 (均值、CVaR 及排除零向量的变体)"""
import logging
from typing import Iterable, Optional, Union

import numpy as np

from app.encoding import IntegerEncoding, IsingHamiltonian
from app.encoding.integer import as_bits
from app.errors import LengthMismatchError
from app.lattice import philox
from .ansatz import check_qubits
from .base import SENTINEL, CostMode, StateVector, bitstring_index

logger = logging.getLogger("vqe")

Bitstring = Union[str, int]


def eigenvalue(H: IsingHamiltonian, bits) -> float:
    """const + Σh_i z_i + ΣJ_ij z_i z_j，比特 1 对应 z = -1"""
    values = as_bits(bits)
    if len(values) != H.n_qubits:
        raise LengthMismatchError(f"比特串长度 {len(values)} 与量子比特数 {H.n_qubits} 不一致")
    return float(H.value(values))


def diagonal(H: IsingHamiltonian, limit: Optional[int] = None) -> np.ndarray:
    """全部 2^N 个计算基态的能量"""
    n = H.n_qubits
    check_qubits(n, limit)
    index = np.arange(1 << n, dtype=np.int64)
    energies = np.full(1 << n, float(H.constant))

    def spin(k: int) -> np.ndarray:
        return 1.0 - 2.0 * ((index >> k) & 1)

    for i, c in H.h.items():
        energies += float(c) * spin(i)
    for (i, j), c in H.J.items():
        # z_i z_j = 1 - 2·(b_i ⊕ b_j)
        energies += float(c) * (1.0 - 2.0 * (((index >> i) ^ (index >> j)) & 1))
    return energies


def zero_mask(enc: IntegerEncoding, limit: Optional[int] = None) -> np.ndarray:
    """解码为零向量的计算基态 (按系数向量判断，不按比特模式)"""
    n_bits = enc.n_bits
    check_qubits(n_bits, limit)
    index = np.arange(1 << n_bits, dtype=np.int64)
    mask = np.ones(1 << n_bits, dtype=bool)
    for c in enc.coordinates:
        value = np.full(1 << n_bits, c.offset, dtype=np.int64)
        for w, k in zip(c.weights, c.bit_indices):
            value += w * ((index >> k) & 1)
        mask &= value == 0
    return mask


def as_mask(zero_set: Union[None, np.ndarray, Iterable[Bitstring]], size: int) -> np.ndarray:
    if zero_set is None:
        return np.zeros(size, dtype=bool)
    if isinstance(zero_set, np.ndarray) and zero_set.dtype == bool:
        return zero_set
    mask = np.zeros(size, dtype=bool)
    for b in zero_set:
        mask[bitstring_index(b) if isinstance(b, str) else int(b)] = True
    return mask


def shot_cost(energies: np.ndarray, zero: np.ndarray, mode: CostMode) -> float:
    """由逐次测量的能量计算代价；排除零向量后没有剩余测量时返回 SENTINEL"""
    kept = energies[~zero] if mode.excludes_zero else energies
    if kept.size == 0:
        return SENTINEL
    if mode.uses_cvar:
        k = mode.tail_count(kept.size)
        return float(np.mean(np.partition(kept, k - 1)[:k]))
    return float(np.mean(kept))


def distribution_cost(probs: np.ndarray, energies: np.ndarray, zero: np.ndarray, mode: CostMode) -> float:
    """精确分布下的代价；CVaR 为下 α 分位的条件期望"""
    if mode.excludes_zero:
        probs = np.where(zero, 0.0, probs)
    total = probs.sum()
    if total <= 1e-15:
        return SENTINEL
    probs = probs / total
    if not mode.uses_cvar:
        return float(np.dot(probs, energies))
    order = np.argsort(energies, kind="stable")
    p = probs[order]
    e = energies[order]
    before = np.cumsum(p) - p
    # 每个基态在下 α 分位中所占的概率
    taken = np.clip(mode.alpha - before, 0.0, p)
    return float(np.dot(taken, e) / taken.sum())


class CostEvaluator:
    """固定哈密顿量与零向量集合的代价函数；sampled 模式共享一个随机流，运行可复现"""

    def __init__(
        self,
        H: IsingHamiltonian,
        mode: CostMode,
        zero_set=None,
        rng: Optional[np.random.Generator] = None,
        energies: Optional[np.ndarray] = None,
    ):
        self.mode = mode
        self.energies = diagonal(H) if energies is None else energies
        self.zero = as_mask(zero_set, self.energies.size)
        self.rng = rng if rng is not None else philox(0)
        self.evaluations = 0

    def __call__(self, state: StateVector) -> float:
        self.evaluations += 1
        probs = state.probabilities()
        if probs.size != self.energies.size:
            raise LengthMismatchError(f"态矢量维数 {probs.size} 与哈密顿量维数 {self.energies.size} 不一致")
        if self.mode.evaluation == "exact":
            return distribution_cost(probs, self.energies, self.zero, self.mode)
        shots = self.rng.choice(probs.size, size=self.mode.shots, p=probs)
        return shot_cost(self.energies[shots], self.zero[shots], self.mode)


def eval_cost(
    state: StateVector,
    H: IsingHamiltonian,
    mode: CostMode,
    zero_set=None,
    seed: int = 0,
) -> float:
    """单次代价评估；zero_set 可以是布尔掩码或比特串/下标集合"""
    return CostEvaluator(H, mode, zero_set=zero_set, rng=philox(seed))(state)
