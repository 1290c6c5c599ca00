"""格的几何量: Gram 矩阵、对偶基、GSO、体积、高斯启发式、正交缺陷"""
import logging
import math
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence, Tuple

import numpy as np

from app.errors import InstabilityError
from .base import Basis, DualBasis, GramMatrix, GsoData
from .exact import bareiss_determinant, dot, fraction_inverse

logger = logging.getLogger("lattice")

# GSO 退化阈值: ‖b*_i‖² < 1e-12·‖b_i‖²
GSO_DEGENERACY = 1e-12


def gram(B: Basis) -> GramMatrix:
    """G = B·Bᵀ (精确整数)"""
    rows = B.rows
    n = len(rows)
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            v = dot(rows[i], rows[j])
            entries[i][j] = v
            entries[j][i] = v
    return GramMatrix.trusted(entries)


def dual_basis(B: Basis) -> DualBasis:
    """精确对偶基 B̂ = (B·Bᵀ)⁻¹·B，满秩方阵时直接用 (B⁻¹)ᵀ"""
    n, d = B.n, B.d
    if n == d:
        inv = fraction_inverse(B.rows)
        rows = [[inv[j][i] for j in range(n)] for i in range(n)]
    else:
        g_inv = fraction_inverse(gram(B).entries)
        rows = [
            [sum((g_inv[i][k] * B.rows[k][j] for k in range(n) if g_inv[i][k]), Fraction(0)) for j in range(d)]
            for i in range(n)
        ]
    return DualBasis(rows=tuple(tuple(r) for r in rows))


def scaled_dual(B: Basis) -> Tuple[Basis, Fraction]:
    """对偶格的整数基 D 与比例因子 f，满足 B̂ = f·D 且 D 的元素互素"""
    dual = dual_basis(B)
    lcm = 1
    for row in dual.rows:
        for x in row:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    int_rows = [[int(x * lcm) for x in row] for row in dual.rows]
    g = 0
    for row in int_rows:
        for x in row:
            g = gcd(g, x)
    int_rows = [[x // g for x in row] for row in int_rows]
    return Basis.trusted(int_rows), Fraction(g, lcm)


def gram_determinant(B: Basis) -> int:
    """det(B·Bᵀ)，方阵时等于 det(B)²"""
    if B.n == B.d:
        det = bareiss_determinant(B.rows)
        return det * det
    return bareiss_determinant(gram(B).entries)


def log_volume(B: Basis) -> float:
    """ln vol(L)"""
    if B.n == B.d:
        return math.log(abs(bareiss_determinant(B.rows)))
    return 0.5 * math.log(bareiss_determinant(gram(B).entries))


def volume(B: Basis) -> float:
    """vol(L) = sqrt(det G)，行列式精确计算后再转换"""
    if B.n == B.d:
        return float(abs(bareiss_determinant(B.rows)))
    det = bareiss_determinant(gram(B).entries)
    root = isqrt(det)
    if root * root == det:
        return float(root)
    return math.exp(0.5 * math.log(det))


def gaussian_heuristic(B: Basis, C: float = 1.0) -> float:
    """C·√(n/2πe)·vol^{1/n}"""
    n = B.n
    return C * math.sqrt(n / (2 * math.pi * math.e)) * math.exp(log_volume(B) / n)


def row_log_norms(B: Basis) -> list:
    return [0.5 * math.log(dot(r, r)) for r in B.rows]


def log2_orthogonality_defect(B: Basis) -> float:
    value = (sum(row_log_norms(B)) - log_volume(B)) / math.log(2)
    return max(value, 0.0)


def orthogonality_defect(B: Basis) -> float:
    """δ = ∏‖b_i‖ / vol(L) ≥ 1"""
    log_defect = sum(row_log_norms(B)) - log_volume(B)
    if log_defect > 700:
        return math.inf
    return max(1.0, math.exp(log_defect))


def gso(B: Basis) -> GsoData:
    """浮点 Gram-Schmidt 正交化 (修正版)"""
    vectors = np.array([[float(x) for x in r] for r in B.rows], dtype=np.float64)
    n = B.n
    ortho = vectors.copy()
    mu = np.eye(n)
    sq = np.zeros(n)
    for i in range(n):
        for j in range(i):
            mu[i, j] = np.dot(vectors[i], ortho[j]) / sq[j]
            ortho[i] -= mu[i, j] * ortho[j]
        sq[i] = float(np.dot(ortho[i], ortho[i]))
        if sq[i] < GSO_DEGENERACY * float(np.dot(vectors[i], vectors[i])):
            raise InstabilityError(f"第 {i} 个 GSO 向量数值为零")
    return GsoData(vectors=ortho, mu=mu, sq_norms=sq)


def gso_coefficients(entries: Sequence[Sequence]) -> Tuple[np.ndarray, np.ndarray]:
    """由 Gram 矩阵 (整数/有理数/浮点) 计算 μ 与 ‖b*_i‖²"""
    G = np.array([[float(x) for x in row] for row in entries], dtype=np.float64)
    n = G.shape[0]
    mu = np.eye(n)
    r = np.zeros(n)
    R = np.zeros((n, n))
    for i in range(n):
        for j in range(i):
            R[i, j] = G[i, j] - np.dot(mu[j, :j], R[i, :j])
            mu[i, j] = R[i, j] / r[j]
        r[i] = G[i, i] - np.dot(mu[i, :i], R[i, :i])
        if r[i] <= GSO_DEGENERACY * G[i, i]:
            raise InstabilityError(f"第 {i} 个 GSO 平方范数数值为零")
    return mu, r
