"""有界整数到二进制变量的编码与解码"""
import logging
from typing import List, Sequence, Tuple, Union

from app.errors import LengthMismatchError, ParameterError, UnsupportedBoundError
from .base import BoundsVector, CoordinateLayout, IntegerEncoding, Scheme

logger = logging.getLogger("encoding")

Bits = Union[str, Sequence[int]]


def plain_weights(a: int) -> List[int]:
    """x = -a + Σ_{j<L} 2^j s_j + (2a+1-2^L) s_L，L = ⌊log₂2a⌋"""
    L = (2 * a).bit_length() - 1
    return [2**j for j in range(L)] + [2 * a + 1 - 2**L]


def magnitude_weights(a: int) -> List[int]:
    """惩罚编码中的幅值部分，取值范围 [0, a-1]"""
    L = (a - 1).bit_length() - 1
    return [2**j for j in range(L)] + [a - 2**L]


def _plain(bounds: BoundsVector) -> IntegerEncoding:
    coordinates = []
    position = 0
    for a, b in zip(bounds.m, bounds.coordinate_bits()):
        if a == 0:
            coordinates.append(CoordinateLayout(bound=0, offset=0))
            continue
        if b == 1:
            # 单比特坐标: x = s ∈ {0, 1}
            weights = [1]
            offset = 0
        else:
            weights = plain_weights(a)
            offset = -a
        indices = tuple(range(position, position + len(weights)))
        position += len(weights)
        coordinates.append(CoordinateLayout(bound=a, offset=offset, bit_indices=indices, weights=tuple(weights)))
    return IntegerEncoding(scheme="plain", coordinates=tuple(coordinates), n_bits=position)


def _penalty(bounds: BoundsVector) -> IntegerEncoding:
    small = [i for i, a in enumerate(bounds.m) if a < 2]
    if small:
        raise UnsupportedBoundError(f"惩罚编码要求所有 a_i ≥ 2，坐标 {small} 不满足")
    coordinates = []
    position = 0
    for a in bounds.m:
        # 每个坐标的比特顺序: ζ, ω, 幅值比特
        magnitude = magnitude_weights(a)
        indices = tuple(range(position, position + 2 + len(magnitude)))
        coordinates.append(
            CoordinateLayout(
                bound=a,
                offset=-a,
                bit_indices=indices,
                weights=(a, a + 1, *magnitude),
                zeta=position,
                omega=position + 1,
            )
        )
        position += len(indices)
    free = max(bounds.n - 2, 0)
    aux = tuple(range(position, position + free))
    return IntegerEncoding(scheme="penalty", coordinates=tuple(coordinates), aux=aux, n_bits=position + free)


def encode_integers(bounds: BoundsVector, scheme: Scheme = "plain") -> IntegerEncoding:
    """按系数界构造比特布局"""
    if scheme == "plain":
        enc = _plain(bounds)
    elif scheme == "penalty":
        enc = _penalty(bounds)
    else:
        raise ParameterError(f"未知编码方案: {scheme}")
    logger.debug(f"{scheme} 编码: n={bounds.n}, 比特数 {enc.n_bits}")
    return enc


def as_bits(bits: Bits) -> List[int]:
    if isinstance(bits, str):
        if any(ch not in "01" for ch in bits):
            raise ParameterError(f"比特串只能包含 0/1: {bits!r}")
        return [int(ch) for ch in bits]
    return [1 if int(b) else 0 for b in bits]


def decode_bitstring(bits: Bits, enc: IntegerEncoding) -> Tuple[int, ...]:
    """比特串 → 整数系数向量；字符串形式的第 k 个字符即第 k 个变量"""
    values = as_bits(bits)
    if len(values) != enc.n_bits:
        raise LengthMismatchError(f"比特串长度 {len(values)} 与编码比特数 {enc.n_bits} 不一致")
    return tuple(c.value(values) for c in enc.coordinates)


def decode_index(index: int, enc: IntegerEncoding) -> Tuple[int, ...]:
    """计算基态下标 (第 k 个变量为下标的第 k 位) 的解码"""
    return tuple(c.pattern_value([index >> k & 1 for k in c.bit_indices]) for c in enc.coordinates)


def auxiliary_chain(zeta: Sequence[int], z_free: Sequence[int]) -> List[int]:
    """完整辅助变量 z_1..z_n: z_n = 1，z_{n-1} = ζ_n，其余为自由变量"""
    n = len(zeta)
    if len(z_free) != max(n - 2, 0):
        raise LengthMismatchError(f"自由辅助变量应有 {max(n - 2, 0)} 个，实际 {len(z_free)}")
    z = list(z_free)
    if n >= 2:
        z.append(zeta[-1])
    z.append(1)
    return z[:n]


def penalty_term(zeta: Sequence[int], z_free: Sequence[int]) -> int:
    """1 + Σ z_i (-(1-ζ_i) + Σ_{k>i} (1-ζ_k))，对 z 取最小值等于 ∏ζ_i"""
    z = auxiliary_chain(zeta, z_free)
    x = [1 - int(v) for v in zeta]
    total = 1
    for i in range(len(x)):
        if z[i]:
            total += -x[i] + sum(x[i + 1 :])
    return total


def penalty_variable_bound(bounds: BoundsVector) -> int:
    """惩罚编码变量数的公开计数 4n - 2 + Σ⌊log₂a_i⌋"""
    return 4 * bounds.n - 2 + sum(a.bit_length() - 1 for a in bounds.m if a > 0)
