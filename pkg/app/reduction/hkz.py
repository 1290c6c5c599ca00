"""HKZ、伪 HKZ 约化，以及经由对偶格的 HKZ 算法 (枚举步骤使用对偶基系数界)"""
import logging
import math
from fractions import Fraction
from typing import List, Optional

from app.errors import InfeasibleRadiusError, InstabilityError, ParameterError
from app.lattice import Basis, dual_basis, gaussian_heuristic, gram, scaled_dual
from app.lattice.exact import dot, solve_left
from .base import SvpOracle, complete_with
from .lll import DEFAULT_DELTA, LllEngine, lll

logger = logging.getLogger("reduction")

# 第 6 步的半径倍数: C=1, 1.05, 然后加倍三次
RADIUS_FACTORS = (1.0, 1.05, 2.1, 4.2, 8.4)


def hkz(B: Basis, oracle: SvpOracle, delta: float = DEFAULT_DELTA, deadline: Optional[float] = None) -> Basis:
    """HKZ 约化: 对每个位置 k 求 π_k(L) 的最短向量并插入，随后尺寸约化"""
    engine = LllEngine(B.rows, delta=delta, deadline=deadline)
    engine.run()
    n = B.n
    for k in range(n - 1):
        engine.check_deadline()
        radius = math.sqrt(engine.r[k]) * (1 + 1e-9)
        coeffs = oracle.solve_projected(engine.mu[k:, k:], engine.r[k:], radius)
        if coeffs is None:
            raise InstabilityError(f"位置 {k} 的投影格中没有找到非零向量")
        engine.insert(k, n, coeffs)
        # 只整理 k 之后的行，前 k+1 个 GSO 向量保持不变
        engine.run(lo=k + 1)
    engine.size_reduce_all()
    logger.debug(f"HKZ 完成: n={n}")
    return engine.basis()


def pseudo_hkz(B: Basis, oracle: SvpOracle, delta: float = DEFAULT_DELTA, deadline: Optional[float] = None) -> Basis:
    """伪 HKZ: LLL 后只对前 n-1 行做 HKZ，最后一行保持不变"""
    if B.n < 2:
        raise ParameterError("伪 HKZ 需要 n ≥ 2")
    reduced = lll(B, delta=delta, deadline=deadline).basis
    head = hkz(Basis.trusted(reduced.rows[:-1]), oracle, delta=delta, deadline=deadline)
    return Basis.trusted(head.rows + (reduced.rows[-1],))


def _primitive_rows(rows: List[List[int]]) -> List[List[int]]:
    g = 0
    for row in rows:
        for v in row:
            g = math.gcd(g, v)
    return [[v // g for v in row] for row in rows] if g > 1 else rows


def _redualize(D: Basis, factor: Fraction) -> Basis:
    """由对偶格整数基 D (B̂ = factor·D) 还原原格的整数基"""
    rows = []
    for row in dual_basis(D).rows:
        values = [x / factor for x in row]
        if any(v.denominator != 1 for v in values):
            raise InstabilityError("对偶的对偶不是整数基")
        rows.append([int(v) for v in values])
    return Basis.trusted(rows)


def _enumerate_with_bounds(B: Basis, enumerator: SvpOracle) -> List[int]:
    from app.encoding.bounds import dual_bounds

    entries = gram(B).entries
    for C in RADIUS_FACTORS:
        radius = gaussian_heuristic(B, C)
        bounds = dual_bounds(B, radius)
        coeffs = enumerator.solve(entries, radius, bounds=bounds.m)
        if coeffs is not None:
            return coeffs
        logger.debug(f"半径 {C}·gh 内没有非零格点，放大半径")
    raise InfeasibleRadiusError(f"半径放大到 {RADIUS_FACTORS[-1]}·gh 仍未找到非零格点 (n={B.n})")


def _algorithm1(B: Basis, enumerator: SvpOracle, delta: float) -> Basis:
    n = B.n
    if n == 1:
        return B
    # 对偶格的整数基并 LLL
    D, factor = scaled_dual(B)
    D = lll(D, delta=delta).basis
    # 对偶基前 n-1 行递归 HKZ
    head = _algorithm1(Basis.trusted(D.rows[:-1]), enumerator, delta)
    D = Basis.trusted(head.rows + (D.rows[-1],))
    B = _redualize(D, factor)
    # 对偶行很短，系数盒很小
    coeffs = _enumerate_with_bounds(B, enumerator)
    engine = LllEngine(complete_with(B.rows, coeffs), delta=delta)
    engine.run()
    rows = engine.rows()
    v = rows[0]
    vv = dot(v, v)
    # 投影到 v 的正交补 (乘以 ‖v‖² 保持整数)
    projected = _primitive_rows([[vv * bj - dot(b, v) * vj for bj, vj in zip(b, v)] for b in rows[1:]])
    reduced = _algorithm1(Basis.trusted(projected), enumerator, delta)
    lifted = [v]
    for p in reduced.rows:
        c = solve_left(projected, p)
        if any(x.denominator != 1 for x in c):
            raise InstabilityError("投影基的变换系数不是整数")
        w = [sum(int(cj) * rows[j + 1][t] for j, cj in enumerate(c)) for t in range(len(v))]
        # α = μ - round 落在 (-1/2, 1/2]，恰为 -1/2 时取 +1/2
        mu = Fraction(dot(w, v), vv)
        shift = math.ceil(mu - Fraction(1, 2))
        lifted.append([a - shift * b for a, b in zip(w, v)])
    return Basis.trusted(lifted)


def algorithm1_dual_hkz(B: Basis, enumerator: SvpOracle, delta: float = DEFAULT_DELTA) -> Basis:
    """经由对偶格的 HKZ 约化，枚举步骤使用由对偶基得到的系数界"""
    if B.n < 2:
        raise ParameterError("该算法需要 n ≥ 2")
    result = _algorithm1(B, enumerator, delta)
    logger.info(f"对偶 HKZ 完成: n={B.n}, 预言机调用 {len(enumerator.history)} 次")
    return result


def hkz_defect_bound_log2(n: int) -> float:
    """log₂ of γ_n^{n/2}·∏_{i=1..n} √(i+3)/2，γ_n 取 n/8 + 6/5"""
    if n < 1:
        raise ParameterError(f"维数必须 ≥ 1，实际 {n}")
    gamma = n / 8 + 6 / 5
    return (n / 2) * math.log2(gamma) + sum(0.5 * math.log2(i + 3) - 1 for i in range(1, n + 1))


def hkz_defect_bound(n: int) -> float:
    """HKZ 基正交缺陷的上界"""
    value = hkz_defect_bound_log2(n)
    if value > 1000:
        return math.inf
    return 2.0**value


def theorem_qubit_bound(n: int, slack: float = 20.0) -> float:
    """(3/2)n log₂n − 2.26n + 4 log₂n + slack"""
    if n < 1:
        raise ParameterError(f"维数必须 ≥ 1，实际 {n}")
    log_n = math.log2(n)
    return 1.5 * n * log_n - 2.26 * n + 4 * log_n + slack
