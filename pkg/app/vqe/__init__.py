from .ansatz import apply_ansatz, check_qubits
from .base import (
    SENTINEL,
    AnsatzSpec,
    CostMode,
    StateVector,
    VqeRunResult,
    bitstring_index,
    index_bitstring,
)
from .cost import CostEvaluator, diagonal, eigenvalue, eval_cost, shot_cost, zero_mask
from .engine import FINAL_SHOTS, optimize, overlap, run_vqe, sample_solution, sampled_vectors, target_set
from .optimizer import OptimizerSettings
from .oracle import VqeOracle

__all__ = [
    "AnsatzSpec",
    "CostEvaluator",
    "CostMode",
    "FINAL_SHOTS",
    "OptimizerSettings",
    "SENTINEL",
    "StateVector",
    "VqeOracle",
    "VqeRunResult",
    "apply_ansatz",
    "bitstring_index",
    "check_qubits",
    "diagonal",
    "eigenvalue",
    "eval_cost",
    "index_bitstring",
    "optimize",
    "overlap",
    "run_vqe",
    "sample_solution",
    "sampled_vectors",
    "shot_cost",
    "target_set",
    "zero_mask",
]
