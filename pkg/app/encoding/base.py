from fractions import Fraction
from typing import Dict, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

Provenance = Literal["dual-lemma", "uniform", "uniform-random", "dual-scaled"]
Scheme = Literal["plain", "penalty"]


def bits_to_bound(bits: int) -> int:
    """b 个比特能表示的对称界 a: ⌊log₂2a⌋+1 = b；单比特坐标记作 a=1"""
    if bits <= 0:
        return 0
    if bits == 1:
        return 1
    return 2 ** (bits - 1) - 1


def bound_to_bits(m: int) -> int:
    """⌊log₂(2m)⌋+1，m=0 不占比特"""
    return (2 * m).bit_length() if m > 0 else 0


class BoundsVector(BaseModel):
    """系数界 |x_i| ≤ m_i 及其来源；bits 为朴素映射给出的显式比特分配"""

    model_config = ConfigDict(frozen=True)

    m: Tuple[int, ...]
    provenance: Provenance = "dual-lemma"
    bits: Optional[Tuple[int, ...]] = None

    @model_validator(mode="after")
    def _check(self) -> "BoundsVector":
        if any(v < 0 for v in self.m):
            raise ValueError("系数界必须非负")
        if self.bits is not None:
            if len(self.bits) != len(self.m):
                raise ValueError("比特分配与系数界长度不一致")
            for b, v in zip(self.bits, self.m):
                if bits_to_bound(b) != v:
                    raise ValueError(f"{b} 个比特对应的界应为 {bits_to_bound(b)}，实际 {v}")
        return self

    @property
    def n(self) -> int:
        return len(self.m)

    def coordinate_bits(self) -> Tuple[int, ...]:
        if self.bits is not None:
            return self.bits
        return tuple(bound_to_bits(v) for v in self.m)

    def contains(self, x: Sequence[int]) -> bool:
        return all(abs(a) <= b for a, b in zip(x, self.m))


class CoordinateLayout(BaseModel):
    """单个坐标的比特布局: x_i = offset + Σ weights_k·s_{bit_indices_k}

    惩罚编码中 ζ 与 ω 是前两个比特；ζ = 1 时忽略 ω 的权重，
    因此取值恰为 [-bound, bound]，ζ = ω = 1 的组合由 QUBO 中的 P·ζω 项排除。
    """

    model_config = ConfigDict(frozen=True)

    bound: int
    offset: int
    bit_indices: Tuple[int, ...] = ()
    weights: Tuple[int, ...] = ()
    zeta: Optional[int] = None
    omega: Optional[int] = None

    @property
    def low(self) -> int:
        return self.offset

    @property
    def high(self) -> int:
        if self.omega is not None:
            return self.offset + sum(self.weights) - self.weights[1]
        return self.offset + sum(self.weights)

    def is_forbidden(self, pattern: Sequence[int]) -> bool:
        """pattern 按 bit_indices 排列；ζ = ω = 1 为惩罚编码的禁用组合"""
        return self.omega is not None and bool(pattern[0]) and bool(pattern[1])

    def pattern_value(self, pattern: Sequence[int]) -> int:
        value = self.offset + sum(w for w, b in zip(self.weights, pattern) if b)
        if self.is_forbidden(pattern):
            value -= self.weights[1]
        return value

    def value(self, bits: Sequence[int]) -> int:
        return self.pattern_value([bits[idx] for idx in self.bit_indices])


class IntegerEncoding(BaseModel):
    """整数系数向量到比特串的编码 (plain: 直接二进制; penalty: 带零向量惩罚的辅助变量)"""

    model_config = ConfigDict(frozen=True)

    scheme: Scheme
    coordinates: Tuple[CoordinateLayout, ...]
    aux: Tuple[int, ...] = ()
    n_bits: int

    @property
    def n(self) -> int:
        return len(self.coordinates)

    @property
    def bounds(self) -> Tuple[int, ...]:
        return tuple(c.bound for c in self.coordinates)

    @property
    def zeta_indices(self) -> Tuple[int, ...]:
        return tuple(c.zeta for c in self.coordinates if c.zeta is not None)


class QuboProblem(BaseModel):
    """c + Σ l_i s_i + Σ_{i<j} q_ij s_i s_j，系数为精确有理数"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_vars: int
    constant: Fraction
    linear: Dict[int, Fraction]
    quadratic: Dict[Tuple[int, int], Fraction]

    def value(self, bits: Sequence[int]) -> Fraction:
        total = self.constant
        for i, c in self.linear.items():
            if bits[i]:
                total += c
        for (i, j), c in self.quadratic.items():
            if bits[i] and bits[j]:
                total += c
        return total


class IsingHamiltonian(BaseModel):
    """对角 Ising 哈密顿量 const + Σ h_i z_i + Σ_{i<j} J_ij z_i z_j；比特 1 对应 z = -1"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_qubits: int
    constant: Fraction
    h: Dict[int, Fraction]
    J: Dict[Tuple[int, int], Fraction]

    def value(self, bits: Sequence[int]) -> Fraction:
        z = [1 - 2 * int(b) for b in bits]
        total = self.constant
        for i, c in self.h.items():
            total += c * z[i]
        for (i, j), c in self.J.items():
            total += c * z[i] * z[j]
        return total
