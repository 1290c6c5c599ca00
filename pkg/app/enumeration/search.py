"""Schnorr-Euchner 深度优先枚举: 球内枚举、最短向量、系数盒搜索"""
import logging
import math
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.errors import BudgetExceededError, ParameterError
from app.lattice import Basis, gaussian_heuristic, gram, gso_coefficients
from .base import EnumResult, pick_canonical

logger = logging.getLogger("enumeration")

NODE_BUDGET = 10**8
MAX_RANK = 32
BOX_LIMIT = 2**26
RADIUS_SLACK = 1e-9

Norm = Union[int, Fraction, float]


def _zigzag(center: float, lo: int, hi: int) -> Iterator[int]:
    """[lo, hi] 内按 |v - center| 不减的顺序产生整数"""
    v0 = min(max(round(center), lo), hi)
    yield v0
    left, right = v0 - 1, v0 + 1
    while left >= lo or right <= hi:
        if right > hi or (left >= lo and center - left <= right - center):
            yield left
            left -= 1
        else:
            yield right
            right += 1


def quadratic_form(entries: Sequence[Sequence], x: Sequence[int]):
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = entries[i]
            total += xi * sum(row[j] * xj for j, xj in enumerate(x) if xj)
    return total


class LatticeSearch:
    """对 GSO 坐标做深度优先搜索，子节点按 Schnorr-Euchner 之字形排序。

    entries 给出时叶子处用精确 x·G·xᵀ 复核；只给 (mu, r) 时 (例如投影块) 使用浮点范数。
    box 给出时额外限制 |x_i| ≤ box[i]。
    """

    def __init__(
        self,
        entries: Optional[Sequence[Sequence]] = None,
        *,
        mu: Optional[np.ndarray] = None,
        r: Optional[np.ndarray] = None,
        box: Optional[Sequence[int]] = None,
        node_budget: int = NODE_BUDGET,
    ):
        if mu is None or r is None:
            if entries is None:
                raise ParameterError("需要 Gram 矩阵或 GSO 数据之一")
            mu, r = gso_coefficients(entries)
        self.entries = entries
        self.mu = [list(row) for row in np.asarray(mu, dtype=np.float64)]
        self.r = [float(v) for v in r]
        self.n = len(self.r)
        self.box = list(box) if box is not None else None
        self.node_budget = node_budget
        self.nodes = 0
        self.bound = 0.0

    def norm(self, x: Sequence[int]) -> Norm:
        if self.entries is not None:
            return quadratic_form(self.entries, x)
        total = 0.0
        for i in range(self.n):
            y = x[i] + sum(x[j] * self.mu[j][i] for j in range(i + 1, self.n))
            total += y * y * self.r[i]
        return total

    def _descend(self, i: int, partial: float, x: List[int], on_leaf: Callable[[List[int]], None]) -> None:
        mu = self.mu
        center = 0.0
        for j in range(i + 1, self.n):
            if x[j]:
                center -= x[j] * mu[j][i]
        remaining = self.bound - partial
        if remaining < 0:
            return
        half = math.sqrt(remaining / self.r[i]) * (1 + 1e-12) + 1e-12
        lo = math.ceil(center - half)
        hi = math.floor(center + half)
        if self.box is not None:
            lo = max(lo, -self.box[i])
            hi = min(hi, self.box[i])
        if lo > hi:
            return
        r_i = self.r[i]
        for v in _zigzag(center, lo, hi):
            self.nodes += 1
            if self.nodes > self.node_budget:
                raise BudgetExceededError(f"枚举节点数超过预算 {self.node_budget}")
            level = partial + (v - center) ** 2 * r_i
            if level > self.bound:
                break
            x[i] = v
            if i == 0:
                on_leaf(x)
            else:
                self._descend(i - 1, level, x, on_leaf)
        x[i] = 0

    def _run(self, squared_radius: float, on_leaf: Callable[[List[int]], None]) -> None:
        self.bound = squared_radius * (1 + RADIUS_SLACK) ** 2
        self._descend(self.n - 1, 0.0, [0] * self.n, on_leaf)
        logger.debug(f"枚举完成: 秩 {self.n}, 访问节点 {self.nodes}")

    def ball(self, squared_radius: Norm) -> List[Tuple[Tuple[int, ...], Norm]]:
        """平方半径内全部非零点 (正负号都保留)"""
        limit = squared_radius if self.entries is not None else float(squared_radius)
        found = []

        def on_leaf(x):
            if any(x):
                value = self.norm(x)
                if value <= limit:
                    found.append((tuple(x), value))

        self._run(float(squared_radius), on_leaf)
        return sorted(found, key=lambda item: (item[1], item[0]))

    def minima(self, squared_radius: Norm) -> Tuple[Optional[Norm], List[Tuple[int, ...]]]:
        """平方半径内的最小非零范数及达到它的全部系数向量"""
        exact = self.entries is not None
        limit = squared_radius if exact else float(squared_radius)
        state = {"best": None, "ties": []}

        def on_leaf(x):
            if not any(x):
                return
            value = self.norm(x)
            if value > limit:
                return
            best = state["best"]
            if best is None or (value < best and (exact or value < best * (1 - 1e-12))):
                state["best"] = value
                state["ties"] = [tuple(x)]
                self.bound = float(value) * (1 + RADIUS_SLACK) ** 2
            elif value == best or (not exact and abs(value - best) <= 1e-12 * best):
                state["ties"].append(tuple(x))

        self._run(float(squared_radius), on_leaf)
        return state["best"], state["ties"]


def _check_rank(B: Basis) -> None:
    if B.n > MAX_RANK:
        raise ParameterError(f"枚举仅支持秩 ≤ {MAX_RANK}，实际 {B.n}")


def enumerate_ball(B: Basis, radius: float, node_budget: int = NODE_BUDGET) -> List[EnumResult]:
    """列出 ‖x·B‖ ≤ radius 的全部非零格点 (正负都返回)"""
    if radius <= 0:
        raise ParameterError(f"半径必须为正: {radius}")
    _check_rank(B)
    search = LatticeSearch(gram(B).entries, node_budget=node_budget)
    return [EnumResult(coefficients=x, squared_norm=v) for x, v in search.ball(Fraction(radius) ** 2)]


def radius_schedule(B: Basis) -> Iterator[float]:
    """gh, 1.05·gh, 然后不断加倍"""
    gh = gaussian_heuristic(B)
    yield gh
    radius = 1.05 * gh
    while True:
        yield radius
        radius *= 2


def shortest_vectors(B: Basis, node_budget: int = NODE_BUDGET) -> List[EnumResult]:
    """全部最短非零向量 (含 ±)"""
    _check_rank(B)
    entries = gram(B).entries
    shortest_row = min(entries[i][i] for i in range(B.n))
    for radius in radius_schedule(B):
        # 基向量本身保证半径 ‖b_i‖ 的球非空
        squared = min(Fraction(radius) ** 2, Fraction(shortest_row))
        search = LatticeSearch(entries, node_budget=node_budget)
        best, ties = search.minima(squared)
        if best is not None:
            return [EnumResult(coefficients=x, squared_norm=best) for x in sorted(ties)]
        logger.debug(f"半径 {float(radius):.4f} 内无非零格点，扩大半径")
    raise AssertionError("unreachable")


def shortest_vector(B: Basis, node_budget: int = NODE_BUDGET) -> EnumResult:
    """最短非零向量，按规范符号与字典序打破平局"""
    minima = shortest_vectors(B, node_budget=node_budget)
    x = pick_canonical(m.coefficients for m in minima)
    return EnumResult(coefficients=x, squared_norm=minima[0].squared_norm)


def _bound_values(bounds) -> List[int]:
    values = list(getattr(bounds, "m", bounds))
    if any(v < 0 for v in values):
        raise ParameterError("系数界必须非负")
    return values


def box_search(B: Basis, bounds, node_budget: int = NODE_BUDGET) -> Optional[EnumResult]:
    """系数盒 |x_i| ≤ m_i 内范数最小的非零向量，盒内只有零向量时返回 None"""
    m = _bound_values(bounds)
    if len(m) != B.n:
        raise ParameterError(f"系数界长度 {len(m)} 与秩 {B.n} 不一致")
    size = 1
    for v in m:
        size *= 2 * v + 1
    if size > BOX_LIMIT:
        raise BudgetExceededError(f"系数盒大小 {size} 超过上限 2^26")
    if not any(m):
        return None
    entries = gram(B).entries
    # 盒内任意单位向量 e_i 给出初始半径
    start = min(entries[i][i] for i in range(B.n) if m[i] > 0)
    search = LatticeSearch(entries, box=m, node_budget=node_budget)
    best, ties = search.minima(start)
    if best is None:
        return None
    return EnumResult(coefficients=pick_canonical(ties), squared_norm=best)
