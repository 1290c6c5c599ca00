"""q-ary 格实例生成"""
import logging

import numpy as np

from app.errors import ParameterError
from .base import Basis

logger = logging.getLogger("lattice")

DEFAULT_Q = 65537
# Ã 的元素以 int64 采样
MAX_Q = 2**63


def philox(seed: int) -> np.random.Generator:
    """计数器型伪随机数发生器 (Philox)，跨平台位级可复现"""
    if seed < 0 or seed >= 2**64:
        raise ParameterError(f"种子必须是 64 位非负整数: {seed}")
    return np.random.Generator(np.random.Philox(seed))


def sample_qary(d: int, k: int, q: int = DEFAULT_Q, seed: int = 0) -> Basis:
    """生成 d×d q-ary 格基 [[I_{d-k}, Ã], [0, q·I_k]]，Ã 在 [0, q-1] 上均匀"""
    if not 1 <= k < d:
        raise ParameterError(f"需要 1 ≤ k < d，实际 k={k}, d={d}")
    if not 2 <= q < MAX_Q:
        raise ParameterError(f"模数 q 必须在 [2, 2^63) 内，实际 {q}")
    rng = philox(seed)
    block = rng.integers(0, q, size=(d - k, k), dtype=np.int64, endpoint=False)
    rows = []
    for i in range(d - k):
        rows.append([int(i == j) for j in range(d - k)] + [int(x) for x in block[i]])
    for i in range(k):
        rows.append([0] * (d - k) + [q if i == j else 0 for j in range(k)])
    return Basis.trusted(rows)


def prepare_instance(d: int, k: int, q: int, n: int, seed: int) -> Basis:
    """采样 q-ary 格，整体 LLL 约化后取前 n 行作为秩 n 子格"""
    if n < 1 or n > d:
        raise ParameterError(f"子格秩 n={n} 必须在 1..d={d} 之间")
    from app.reduction.lll import lll

    report = lll(sample_qary(d, k, q, seed))
    logger.debug(f"实例 seed={seed} 预处理完成，交换 {report.swaps} 次")
    return Basis.trusted(report.basis.rows[:n])
