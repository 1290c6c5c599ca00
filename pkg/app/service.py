"""HTTP 与 MCP 两个服务入口共用的操作: 请求/响应模型与组合逻辑"""
import json
import logging
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from app.encoding import (
    BoundsVector,
    MappingSpec,
    build_penalty_qubo,
    build_qubo,
    default_penalty,
    dual_bounds,
    dump_hamiltonian,
    encode_integers,
    penalty_variable_bound,
    qubit_count,
    qubo_to_ising,
)
from app.encoding.bounds import Strategy
from app.enumeration import shortest_vector
from app.errors import ParameterError
from app.lattice import Basis, gaussian_heuristic, gram, log2_orthogonality_defect, prepare_instance, sample_qary
from app.reduction import EnumerationOracle, algorithm1_dual_hkz, bkz, hkz, lll, pseudo_hkz
from app.vqe import AnsatzSpec, CostMode, OptimizerSettings, VqeRunResult, run_vqe
from app.vqe.base import Entangler, Evaluation, Variant

logger = logging.getLogger("service")

Rows = List[List[int]]
Method = Literal["lll", "bkz", "hkz", "pseudo-hkz", "dual-hkz"]


def parse_radius(value: Union[str, float], B: Basis) -> float:
    """半径: 数值、gh 或 <倍数>gh (如 1.05gh)"""
    if isinstance(value, (int, float)):
        return float(value)
    text = value.strip().lower()
    try:
        if text.endswith("gh"):
            factor = float(text[:-2]) if text[:-2] else 1.0
            return factor * gaussian_heuristic(B)
        return float(text)
    except ValueError as e:
        raise ParameterError(f"无法解析半径: {value!r}") from e


class LatticeInput(BaseModel):
    rows: Rows

    def basis(self) -> Basis:
        return Basis.from_rows(self.rows)


class MappingInput(LatticeInput):
    A: Union[float, str] = "gh"
    strategy: Strategy = "dual-lemma"
    qubits: Optional[int] = None
    seed: int = Field(default=0, ge=0)

    def bounds(self, B: Basis) -> BoundsVector:
        if self.strategy == "dual-lemma":
            return dual_bounds(B, parse_radius(self.A, B))
        return MappingSpec(strategy=self.strategy, qubits=self.qubits).bounds_for(B, self.seed)


class GenerateRequest(BaseModel):
    d: int
    k: int
    q: int = 65537
    n: Optional[int] = None
    seed: int = Field(default=0, ge=0)


class BasisResponse(BaseModel):
    rows: Rows
    n: int
    d: int
    log2_defect: float


class ReduceRequest(LatticeInput):
    method: Method = "lll"
    beta: int = 10
    delta: float = 0.99


class ReduceResponse(BasisResponse):
    method: str
    oracle_calls: int


class BoundsResponse(BaseModel):
    m: List[int]
    provenance: str
    bits: Optional[List[int]] = None
    qubits: int
    penalty_variables: int


class HamiltonianRequest(MappingInput):
    penalty: bool = False
    P: Optional[int] = Field(default=None, gt=0)
    ising: bool = False


class HamiltonianResponse(BaseModel):
    kind: str
    n_vars: int
    document: dict


class VqeRequest(MappingInput):
    strategy: Strategy = "uniform"
    variant: Variant = "zero-excluded-cvar"
    alpha: float = Field(default=0.175, gt=0, le=1)
    evaluation: Evaluation = "sampled"
    shots: int = Field(default=512, ge=1)
    layers: int = Field(default=2, ge=0)
    entangler: Entangler = "linear"
    max_iterations: int = Field(default=2000, ge=1)
    restarts: int = Field(default=2, ge=0)
    final_shots: int = Field(default=5000, ge=1)


class SolveResponse(BaseModel):
    coefficients: List[int]
    vector: List[int]
    squared_norm: int


def _basis_response(B: Basis) -> dict:
    return {"rows": B.to_lists(), "n": B.n, "d": B.d, "log2_defect": log2_orthogonality_defect(B)}


def generate_lattice(req: GenerateRequest) -> BasisResponse:
    if req.n is None:
        B = sample_qary(req.d, req.k, req.q, req.seed)
    else:
        B = prepare_instance(req.d, req.k, req.q, req.n, req.seed)
    return BasisResponse(**_basis_response(B))


def reduce_lattice(req: ReduceRequest) -> ReduceResponse:
    B = req.basis()
    oracle = EnumerationOracle()
    if req.method == "lll":
        R = lll(B, delta=req.delta).basis
    elif req.method == "bkz":
        R = bkz(B, req.beta, oracle, delta=req.delta).basis
    elif req.method == "hkz":
        R = hkz(B, oracle, delta=req.delta)
    elif req.method == "pseudo-hkz":
        R = pseudo_hkz(B, oracle, delta=req.delta)
    else:
        R = algorithm1_dual_hkz(B, oracle, delta=req.delta)
    return ReduceResponse(**_basis_response(R), method=req.method, oracle_calls=len(oracle.history))


def lattice_bounds(req: MappingInput) -> BoundsResponse:
    B = req.basis()
    bounds = req.bounds(B)
    return BoundsResponse(
        m=list(bounds.m),
        provenance=bounds.provenance,
        bits=list(bounds.bits) if bounds.bits is not None else None,
        qubits=qubit_count(bounds),
        penalty_variables=penalty_variable_bound(bounds),
    )


def build_hamiltonian(req: HamiltonianRequest) -> HamiltonianResponse:
    B = req.basis()
    bounds = req.bounds(B)
    if req.penalty:
        enc = encode_integers(bounds, "penalty")
        P = req.P if req.P is not None else default_penalty(B)
        problem = build_penalty_qubo(gram(B), enc, P)
    else:
        enc = encode_integers(bounds, "plain")
        problem = build_qubo(gram(B), enc)
    if req.ising:
        problem = qubo_to_ising(problem)
    document = json.loads(dump_hamiltonian(problem, enc))
    return HamiltonianResponse(kind=document["kind"], n_vars=document["n_vars"], document=document)


def solve_svp(req: LatticeInput) -> SolveResponse:
    B = req.basis()
    result = shortest_vector(B)
    x = result.coefficients
    vector = [sum(c * row[j] for c, row in zip(x, B.rows)) for j in range(B.d)]
    return SolveResponse(coefficients=list(x), vector=vector, squared_norm=result.squared_norm)


def run_vqe_job(req: VqeRequest) -> VqeRunResult:
    B = req.basis()
    enc = encode_integers(req.bounds(B), "plain")
    H = qubo_to_ising(build_qubo(gram(B), enc))
    try:
        spec = AnsatzSpec(n_qubits=enc.n_bits, layers=req.layers, entangler=req.entangler)
        mode = CostMode(variant=req.variant, alpha=req.alpha, evaluation=req.evaluation, shots=req.shots)
    except ValidationError as e:
        raise ParameterError(f"VQE 参数不合法: {e}") from e
    settings = OptimizerSettings(max_iterations=req.max_iterations, restarts=req.restarts)
    return run_vqe(B, enc, H, spec, mode, settings, seed=req.seed, final_shots=req.final_shots)
