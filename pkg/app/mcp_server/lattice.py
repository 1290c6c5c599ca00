"""格与 VQE 工具的 MCP 服务器"""
import logging
from typing import List, Optional

from app.encoding.bounds import INCLUSION_REFERENCE
from app.harness import ExperimentConfig, max_qubits, scaling_reference
from app.harness.scaling import QUADRATIC_CURVES
from app.mcp_server.base import BaseMCPServer
from app.service import (
    GenerateRequest,
    HamiltonianRequest,
    LatticeInput,
    MappingInput,
    ReduceRequest,
    VqeRequest,
    build_hamiltonian as _build_hamiltonian,
    generate_lattice,
    lattice_bounds as _lattice_bounds,
    reduce_lattice,
    run_vqe_job,
    solve_svp as _solve_svp,
)

logger = logging.getLogger("mcp_server")

Rows = List[List[int]]

SCALING_LABELS = [*QUADRATIC_CURVES, "pseudo-hkz", "bound"]
SCALING_RANKS = list(range(10, 65, 5))


def sample_lattice(d: int, k: int, q: int = 65537, n: Optional[int] = None, seed: int = 0) -> dict:
    """生成 d 维 q-ary 格基 (k 为随机块列数)；给定 n 时 LLL 后取前 n 行"""
    return generate_lattice(GenerateRequest(d=d, k=k, q=q, n=n, seed=seed)).model_dump()


def reduce_basis(rows: Rows, method: str = "lll", beta: int = 10, delta: float = 0.99) -> dict:
    """约化格基，method 取 lll、bkz、hkz、pseudo-hkz 或 dual-hkz"""
    return reduce_lattice(ReduceRequest(rows=rows, method=method, beta=beta, delta=delta)).model_dump()


def lattice_bounds(
    rows: Rows, A: str = "gh", strategy: str = "dual-lemma", qubits: Optional[int] = None, seed: int = 0
) -> dict:
    """系数界 m 与所需量子比特数；A 可写成数值、gh 或 1.05gh"""
    return _lattice_bounds(MappingInput(rows=rows, A=A, strategy=strategy, qubits=qubits, seed=seed)).model_dump()


def build_hamiltonian(
    rows: Rows,
    A: str = "gh",
    strategy: str = "dual-lemma",
    qubits: Optional[int] = None,
    penalty: bool = False,
    P: Optional[int] = None,
    ising: bool = False,
    seed: int = 0,
) -> dict:
    """构造 ‖xB‖² 的 QUBO 或 Ising 哈密顿量 (交换格式)"""
    req = HamiltonianRequest(
        rows=rows, A=A, strategy=strategy, qubits=qubits, penalty=penalty, P=P, ising=ising, seed=seed
    )
    return _build_hamiltonian(req).document


def solve_svp(rows: Rows) -> dict:
    """经典枚举求最短非零向量"""
    return _solve_svp(LatticeInput(rows=rows)).model_dump()


def run_vqe(
    rows: Rows,
    strategy: str = "uniform",
    qubits: Optional[int] = None,
    alpha: float = 0.175,
    variant: str = "zero-excluded-cvar",
    layers: int = 2,
    max_iterations: int = 2000,
    seed: int = 0,
) -> dict:
    """对格基运行一次模拟 VQE，返回重叠度、迭代次数与采样到的最短向量"""
    req = VqeRequest(
        rows=rows,
        strategy=strategy,
        qubits=qubits,
        alpha=alpha,
        variant=variant,
        layers=layers,
        max_iterations=max_iterations,
        seed=seed,
    )
    result = run_vqe_job(req)
    logger.info(f"VQE 完成: 重叠度 {result.overlap or 0.0:.4f}, 成功 {result.success}")
    return {**result.model_dump(mode="json"), "success": result.success}


def defaults() -> dict:
    """实验配置的默认值与量子比特上限"""
    return {**ExperimentConfig().model_dump(mode="json"), "max_qubits": max_qubits()}


def reference_curves() -> dict:
    """公开的比特数缩放拟合曲线 (按 n 取值) 与单比特包含概率"""
    return {
        "qubit_scaling": {
            label: {str(n): round(scaling_reference(n, label), 3) for n in SCALING_RANKS} for label in SCALING_LABELS
        },
        "inclusion_percent": {str(rank): p for rank, p in INCLUSION_REFERENCE.items()},
    }


class LatticeMCPServer(BaseMCPServer):
    """格约化、哈密顿量构造与 VQE 求解的 MCP 服务器"""

    TOOLS = (sample_lattice, reduce_basis, lattice_bounds, build_hamiltonian, solve_svp, run_vqe)
    RESOURCES = {
        "data://svp/defaults": defaults,
        "data://svp/reference-curves": reference_curves,
    }

    def __init__(self):
        super().__init__(name="SVP-VQE 格工具")
