"""系数界: 对偶基引理、量子比特预算、朴素映射策略与包含概率"""
import logging
import math
from typing import Callable, Iterable, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from app.enumeration import EnumResult, shortest_vectors
from app.errors import BudgetExceededError, InstabilityError, ParameterError
from app.lattice import Basis, dual_basis, gaussian_heuristic, philox
from app.lattice.exact import fraction_inverse
from .base import BoundsVector, bits_to_bound, bound_to_bits

logger = logging.getLogger("encoding")

FLOOR_SLACK = 1e-12

Strategy = Literal["uniform", "uniform-random", "dual-scaled", "dual-lemma"]

# 单比特映射下各秩的公开包含百分比
INCLUSION_REFERENCE = {15: 80, 16: 75, 17: 75, 18: 74, 19: 71, 20: 70, 21: 64, 22: 62, 23: 57, 24: 55, 25: 50}


def floor_bounds(squared_norms, A: float) -> Tuple[int, ...]:
    """⌊A·‖b̂_i‖⌋，开方前取浮点，取整前加 1e-12 的相对余量"""
    if A <= 0:
        raise ParameterError(f"半径 A 必须为正: {A}")
    m = []
    for value in squared_norms:
        scaled = A * math.sqrt(float(value))
        m.append(math.floor(scaled + FLOOR_SLACK * max(1.0, scaled)))
    return tuple(m)


def dual_bounds(B: Basis, A: float) -> BoundsVector:
    """m_i = ⌊A·‖b̂_i‖⌋: 半径 A 球内的格点系数满足 |x_i| ≤ m_i"""
    return BoundsVector(m=floor_bounds(dual_basis(B).squared_norms(), A), provenance="dual-lemma")


def dual_bounds_from_gram(entries: Sequence[Sequence], A: float) -> BoundsVector:
    """同 dual_bounds，‖b̂_i‖² 取 G⁻¹ 的对角元"""
    inverse = fraction_inverse(entries)
    return BoundsVector(m=floor_bounds([inverse[i][i] for i in range(len(entries))], A), provenance="dual-lemma")


def qubit_count(bounds: BoundsVector) -> int:
    """N = Σ(⌊log₂(2m_i)⌋+1)，m_i = 0 不占比特；显式比特分配优先"""
    return sum(bounds.coordinate_bits())


def qubit_budget_bound(n: int, dual_defect: float, C: float = 1.0) -> float:
    """2n + log₂((C²n/2πe)^{n/2}·δ(B̂))"""
    if n < 1:
        raise ParameterError(f"维数必须 ≥ 1，实际 {n}")
    if dual_defect < 1:
        raise ParameterError(f"正交缺陷必须 ≥ 1，实际 {dual_defect}")
    if C <= 0:
        raise ParameterError(f"C 必须为正: {C}")
    return 2 * n + (n / 2) * math.log2(C * C * n / (2 * math.pi * math.e)) + math.log2(dual_defect)


def naive_mapping(
    n: int,
    m_qubits: Optional[int],
    strategy: Strategy,
    B: Optional[Basis] = None,
    seed: int = 0,
) -> BoundsVector:
    """把 m_qubits 个比特分给 n 个坐标，并换算成系数界"""
    if n < 1:
        raise ParameterError(f"秩必须 ≥ 1，实际 {n}")
    if strategy in ("uniform", "uniform-random"):
        if m_qubits is None or m_qubits < n:
            raise ParameterError(f"{strategy} 策略需要 m_qubits ≥ n={n}，实际 {m_qubits}")
        bits = [m_qubits // n] * n
        if strategy == "uniform-random":
            leftover = m_qubits - bits[0] * n
            if leftover:
                for i in philox(seed).choice(n, size=leftover, replace=False):
                    bits[int(i)] += 1
        return BoundsVector(m=tuple(bits_to_bound(b) for b in bits), provenance=strategy, bits=tuple(bits))
    if strategy == "dual-scaled":
        if B is None:
            raise ParameterError("dual-scaled 策略需要提供格基")
        if B.n != n:
            raise ParameterError(f"格基秩 {B.n} 与 n={n} 不一致")
        base = dual_bounds(B, gaussian_heuristic(B))
        bits = [bound_to_bits(v) for v in base.m]
        total = sum(bits)
        if m_qubits is None or total <= m_qubits:
            return BoundsVector(m=base.m, provenance="dual-scaled")
        scale = m_qubits / total
        scaled = [math.floor(b * scale) for b in bits]
        logger.debug(f"dual-scaled: {total} 个比特缩放到 {sum(scaled)} (上限 {m_qubits})")
        return BoundsVector(m=tuple(bits_to_bound(b) for b in scaled), provenance="dual-scaled", bits=tuple(scaled))
    raise ParameterError(f"未知映射策略: {strategy}")


class MappingSpec(BaseModel):
    """包含概率实验中的映射策略及参数。

    qubits 为 None 时，uniform 系列按每个系数 1 个比特分配；dual-lemma 使用 A = radius_factor·gh。
    """

    model_config = ConfigDict(frozen=True)

    strategy: Strategy = "uniform"
    qubits: Optional[int] = None
    radius_factor: float = 1.0

    def bounds_for(self, B: Basis, seed: int) -> BoundsVector:
        if self.strategy == "dual-lemma":
            return dual_bounds(B, self.radius_factor * gaussian_heuristic(B))
        qubits = self.qubits
        if qubits is None and self.strategy != "dual-scaled":
            qubits = B.n
        return naive_mapping(B.n, qubits, self.strategy, B=B, seed=seed)


class InclusionEstimate(BaseModel):
    """包含概率估计；枚举失败的实例不计入分母"""

    included: int = 0
    evaluated: int = 0
    failures: int = 0

    @property
    def probability(self) -> float:
        return self.included / self.evaluated if self.evaluated else 0.0


def any_in_box(bounds: BoundsVector, vectors: Iterable[EnumResult]) -> bool:
    """任一向量 (系数表示) 落在系数盒内"""
    return any(bounds.contains(v.coefficients) for v in vectors)


def shortest_in_box(B: Basis, bounds: BoundsVector) -> bool:
    return any_in_box(bounds, shortest_vectors(B))


def inclusion_probability(
    instance_gen: Callable[[int], Tuple[Basis, int]],
    count: int,
    mapping: MappingSpec,
) -> InclusionEstimate:
    """最短向量 (任一符号) 落在系数盒内的实例比例。instance_gen(i) 返回 (格基, 种子)"""
    if count < 1:
        raise ParameterError(f"实例数必须 ≥ 1，实际 {count}")
    estimate = InclusionEstimate()
    for i in range(count):
        B, seed = instance_gen(i)
        try:
            inside = shortest_in_box(B, mapping.bounds_for(B, seed))
        except (BudgetExceededError, InstabilityError) as e:
            logger.warning(f"实例 {i} (seed={seed}) 枚举失败，不计入分母: {e}")
            estimate.failures += 1
            continue
        estimate.evaluated += 1
        estimate.included += int(inside)
    logger.info(
        f"包含概率 {estimate.probability:.3f} ({estimate.included}/{estimate.evaluated}, 失败 {estimate.failures})"
    )
    return estimate


def inclusion_reference(rank: int) -> Optional[float]:
    """单比特映射的公开包含概率 (仅秩 15..25)"""
    value = INCLUSION_REFERENCE.get(rank)
    return value / 100 if value is not None else None
