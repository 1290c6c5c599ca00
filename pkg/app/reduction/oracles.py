"""基于经典枚举的 SVP 预言机"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from app.enumeration import NODE_BUDGET, LatticeSearch, pick_canonical
from .base import OracleCall, SvpOracle

logger = logging.getLogger("reduction")


def bits_for_bounds(bounds: Sequence[int]) -> int:
    """N = Σ(⌊log₂(2m_i)⌋+1)，m_i = 0 的坐标不占比特"""
    return sum((2 * m).bit_length() for m in bounds if m > 0)


class EnumerationOracle(SvpOracle):
    """Schnorr-Euchner 枚举实现的预言机，记录每次调用的秩、半径和系数盒所需比特数"""

    name = "enumeration"

    def __init__(self, node_budget: int = NODE_BUDGET):
        super().__init__()
        self.node_budget = node_budget

    def _record(self, rank: int, radius: float, bounds, found: bool) -> None:
        qubits = bits_for_bounds(bounds) if bounds is not None else None
        self.history.append(OracleCall(rank=rank, radius=float(radius), qubits=qubits, found=found))

    def solve(self, entries, radius, bounds=None) -> Optional[List[int]]:
        search = LatticeSearch(entries, box=bounds, node_budget=self.node_budget)
        best, ties = search.minima(Fraction(radius) ** 2)
        self._record(len(entries), radius, bounds, best is not None)
        if best is None:
            return None
        return list(pick_canonical(ties))

    def solve_projected(self, mu: np.ndarray, r: np.ndarray, radius: float) -> Optional[List[int]]:
        search = LatticeSearch(mu=mu, r=r, node_budget=self.node_budget)
        best, ties = search.minima(float(radius) ** 2)
        self._record(len(r), radius, None, best is not None)
        if best is None:
            return None
        return list(pick_canonical(ties))
