"""态矢量模拟: Ry 旋转层与 CZ 纠缠层"""
import logging
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from app.errors import LengthMismatchError, QubitLimitError
from .base import AnsatzSpec, StateVector

logger = logging.getLogger("vqe")


def check_qubits(n_qubits: int, limit: Optional[int] = None) -> None:
    """态矢量内存保护，上限默认取自 SVP_VQE_MAX_QUBITS"""
    if limit is None:
        from app.harness.settings import max_qubits

        limit = max_qubits()
    if n_qubits > limit:
        raise QubitLimitError(f"需要 {n_qubits} 个量子比特，超过上限 {limit} (可通过 SVP_VQE_MAX_QUBITS 调整)")


@lru_cache(maxsize=4)
def cz_signs(n_qubits: int, pairs: Tuple[Tuple[int, int], ...]) -> np.ndarray:
    """一整层 CZ 的对角符号 (各 CZ 互相对易)"""
    index = np.arange(1 << n_qubits, dtype=np.int64)
    parity = np.zeros(1 << n_qubits, dtype=np.int64)
    for i, j in pairs:
        parity ^= (index >> i) & (index >> j) & 1
    return np.where(parity == 1, -1.0, 1.0)


def apply_ry(psi: np.ndarray, qubit: int, theta: float) -> np.ndarray:
    """Ry(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]] 作用于第 qubit 位"""
    view = psi.reshape(-1, 2, 1 << qubit)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = c * a0 - s * a1
    view[:, 1, :] = s * a0 + c * a1
    return psi


def apply_ansatz(spec: AnsatzSpec, theta: Sequence[float], limit: Optional[int] = None) -> StateVector:
    """从 |0…0⟩ 出发: Ry 层，然后 L 次 (CZ 纠缠层, Ry 层)"""
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (spec.n_params,):
        raise LengthMismatchError(f"参数个数应为 {spec.n_params}，实际 {theta.size}")
    n = spec.n_qubits
    check_qubits(n, limit)
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[0] = 1.0
    signs = cz_signs(n, tuple(spec.pairs())) if spec.layers else None
    for layer in range(spec.layers + 1):
        if layer:
            psi *= signs
        for q in range(n):
            apply_ry(psi, q, theta[layer * n + q])
    # 去掉累积舍入误差
    psi /= np.sqrt(np.vdot(psi, psi).real)
    return StateVector(amplitudes=psi)
