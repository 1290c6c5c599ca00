"""对偶约化后的量子比特数，以及比特数随维数变化的公开拟合曲线"""
import logging
import math
import re
from typing import Optional, Tuple

from app.encoding import BoundsVector, floor_bounds, qubit_count
from app.errors import ParameterError
from app.lattice import Basis, gaussian_heuristic, scaled_dual
from app.lattice.exact import dot
from app.reduction import DEFAULT_DELTA, EnumerationOracle, bkz, hkz, lll, pseudo_hkz

logger = logging.getLogger("harness")

_BKZ = re.compile(r"^bkz-(\d+)$")

# 系数 (c0, c1, c2): c0 + c1·n + c2·n²
QUADRATIC_CURVES = {
    "lll": (-21.699, 2.467, 0.036),
    "bkz-20": (-37.785, 3.221, 0.023),
    "bkz-50": (-16.164, 2.673, 0.024),
    "bkz-70": (-34.389, 3.332, 0.018),
}


def parse_reduction(label: str) -> Tuple[str, Optional[int]]:
    """lll | bkz-β | hkz | pseudo-hkz"""
    label = label.strip().lower()
    if label in ("lll", "hkz", "pseudo-hkz"):
        return label, None
    match = _BKZ.match(label)
    if match:
        beta = int(match.group(1))
        if beta < 2:
            raise ParameterError(f"BKZ 块大小必须 ≥ 2: {label}")
        return "bkz", beta
    raise ParameterError(f"未知约化方式: {label}")


def reduce_dual(B: Basis, reduction: str, delta: float = DEFAULT_DELTA, deadline: Optional[float] = None):
    """约化 B 的对偶格，返回 (约化后的整数对偶基 D, 比例因子 f)，B̂ = f·D"""
    kind, beta = parse_reduction(reduction)
    D, factor = scaled_dual(B)
    oracle = EnumerationOracle()
    if kind == "lll":
        R = lll(D, delta=delta, deadline=deadline).basis
    elif kind == "bkz":
        R = bkz(D, min(beta, D.n), oracle, delta=delta, deadline=deadline).basis
    elif kind == "hkz":
        R = hkz(D, oracle, delta=delta, deadline=deadline)
    else:
        R = pseudo_hkz(D, oracle, delta=delta, deadline=deadline)
    return R, factor


def dual_reduced_qubits(
    B: Basis,
    reduction: str = "lll",
    delta: float = DEFAULT_DELTA,
    deadline: Optional[float] = None,
) -> int:
    """约化对偶格后，在 A = gh(L) 处由约化对偶基行长给出的系数界所需比特数"""
    R, factor = reduce_dual(B, reduction, delta=delta, deadline=deadline)
    A = gaussian_heuristic(B)
    norms = [factor * factor * dot(row, row) for row in R.rows]
    bounds = BoundsVector(m=floor_bounds(norms, A), provenance="dual-lemma")
    qubits = qubit_count(bounds)
    logger.debug(f"n={B.n}, {reduction}: 系数界 {bounds.m}, 比特数 {qubits}")
    return qubits


def scaling_reference(n: int, reduction: str) -> Optional[float]:
    """公开拟合曲线在 n 处的值；bound 为最坏情况 -2.26n + 1.5n·log₂n"""
    label = reduction.strip().lower()
    if label in QUADRATIC_CURVES:
        c0, c1, c2 = QUADRATIC_CURVES[label]
        return c0 + c1 * n + c2 * n * n
    if label == "pseudo-hkz":
        return 44.078 - 5.556 * n + 1.5 * n * math.log2(n)
    if label == "bound":
        return -2.26 * n + 1.5 * n * math.log2(n)
    return None
