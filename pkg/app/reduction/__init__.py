from .base import OracleCall, ReductionReport, SvpOracle, complete_with, extended_gcd
from .bkz import MAX_TOURS, bkz
from .hkz import (
    algorithm1_dual_hkz,
    hkz,
    hkz_defect_bound,
    hkz_defect_bound_log2,
    pseudo_hkz,
    theorem_qubit_bound,
)
from .lll import DEFAULT_DELTA, LllEngine, lll, size_reduce
from .oracles import EnumerationOracle, bits_for_bounds

__all__ = [
    "DEFAULT_DELTA",
    "EnumerationOracle",
    "LllEngine",
    "MAX_TOURS",
    "OracleCall",
    "ReductionReport",
    "SvpOracle",
    "algorithm1_dual_hkz",
    "bits_for_bounds",
    "bkz",
    "complete_with",
    "extended_gcd",
    "hkz",
    "hkz_defect_bound",
    "hkz_defect_bound_log2",
    "lll",
    "pseudo_hkz",
    "size_reduce",
    "theorem_qubit_bound",
]
