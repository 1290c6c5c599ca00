"""VQE 主循环与结果提取: 目标比特串集合、重叠度、最终采样"""
import itertools
import logging
from collections import Counter
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.encoding import IntegerEncoding, IsingHamiltonian, penalty_term
from app.encoding.integer import decode_index
from app.enumeration import EnumResult, canonical_sign, quadratic_form, shortest_vectors
from app.errors import ParameterError
from app.lattice import Basis, GramMatrix, gram, philox
from .ansatz import apply_ansatz
from .base import AnsatzSpec, CostMode, StateVector, VqeRunResult, bitstring_index
from .cost import CostEvaluator, zero_mask
from .optimizer import OptimizerSettings, minimize_with_restarts

logger = logging.getLogger("vqe")

FINAL_SHOTS = 5000


def optimize(
    H: IsingHamiltonian,
    spec: AnsatzSpec,
    mode: CostMode,
    settings: OptimizerSettings = OptimizerSettings(),
    seed: int = 0,
    zero_set=None,
) -> VqeRunResult:
    """随机初值 + Nelder-Mead，直到停滞或达到迭代上限；不收敛时返回目前最好的参数"""
    if spec.n_qubits != H.n_qubits:
        raise ParameterError(f"拟设量子比特数 {spec.n_qubits} 与哈密顿量 {H.n_qubits} 不一致")
    init_rng, shot_rng = philox(seed).spawn(2)
    evaluator = CostEvaluator(H, mode, zero_set=zero_set, rng=shot_rng)

    def cost(theta: np.ndarray) -> float:
        return evaluator(apply_ansatz(spec, theta))

    best = minimize_with_restarts(cost, spec.n_params, settings, init_rng)
    if not best.converged:
        logger.warning(f"VQE 在 {settings.max_iterations} 次迭代内未收敛 (seed={seed})")
    return VqeRunResult(
        seed=seed,
        n_qubits=spec.n_qubits,
        theta=best.theta,
        iterations=best.iterations,
        evaluations=evaluator.evaluations,
        cost_trace=best.trace,
        final_cost=best.cost,
        converged=best.converged,
    )


def coordinate_table(enc: IntegerEncoding) -> List[Dict[int, List[Tuple[Tuple[int, int], ...]]]]:
    """每个坐标: 取值 → 能产生该值的 (比特位置, 比特值) 组合，不含 ζ = ω = 1"""
    tables = []
    for c in enc.coordinates:
        table: Dict[int, List[Tuple[Tuple[int, int], ...]]] = {}
        for pattern in itertools.product((0, 1), repeat=len(c.bit_indices)):
            if c.is_forbidden(pattern):
                continue
            value = c.pattern_value(pattern)
            table.setdefault(value, []).append(tuple(zip(c.bit_indices, pattern)))
        tables.append(table)
    return tables


def target_set(B: Basis, enc: IntegerEncoding) -> FrozenSet[str]:
    """解码为某个最短非零向量 (两个符号、所有简并编码) 的全部比特串"""
    if enc.n != B.n:
        raise ParameterError(f"编码坐标数 {enc.n} 与格秩 {B.n} 不一致")
    if enc.n_bits == 0:
        return frozenset()
    tables = coordinate_table(enc)
    members = set()
    for vector in shortest_vectors(B):
        x = vector.coefficients
        choices = [tables[i].get(v) for i, v in enumerate(x)]
        if any(ch is None for ch in choices):
            continue
        for combo in itertools.product(*choices):
            bits = [0] * enc.n_bits
            for assignment in combo:
                for k, b in assignment:
                    bits[k] = b
            if enc.scheme == "penalty":
                zeta = [bits[c.zeta] for c in enc.coordinates]
                for free in itertools.product((0, 1), repeat=len(enc.aux)):
                    if penalty_term(zeta, free) == 0:
                        for k, b in zip(enc.aux, free):
                            bits[k] = b
                        members.add("".join(map(str, bits)))
            else:
                members.add("".join(map(str, bits)))
    return frozenset(members)


def target_indices(targets: Iterable[Union[str, int]]) -> np.ndarray:
    return np.array(sorted(bitstring_index(t) if isinstance(t, str) else int(t) for t in targets), dtype=np.int64)


def overlap(state: StateVector, targets: Iterable[Union[str, int]]) -> float:
    """Σ_{b∈targets} |⟨b|ψ⟩|²"""
    index = target_indices(targets)
    if index.size == 0:
        return 0.0
    return float(min(1.0, state.probabilities()[index].sum()))


def sampled_vectors(state: StateVector, shots: int, enc: IntegerEncoding, seed: int = 0) -> Counter:
    """测量 shots 次并解码，返回 系数向量 → 次数"""
    if shots < 1:
        raise ParameterError(f"测量次数必须 ≥ 1: {shots}")
    draws = philox(seed).choice(state.amplitudes.size, size=shots, p=state.probabilities())
    counts = Counter()
    for index, times in zip(*np.unique(draws, return_counts=True)):
        counts[decode_index(int(index), enc)] += int(times)
    return counts


def sample_solution(
    state: StateVector,
    shots: int,
    enc: IntegerEncoding,
    G: Union[GramMatrix, Sequence[Sequence[int]]],
    seed: int = 0,
) -> Optional[EnumResult]:
    """采样中能量最低的非零向量；全部为零向量时返回 None

    能量为解码后 x 的 x·G·xᵀ (精确)。普通编码下与哈密顿量在每个比特串上相等，
    惩罚编码下不含惩罚项。
    """
    entries = G.entries if isinstance(G, GramMatrix) else G
    best = None
    for x in sampled_vectors(state, shots, enc, seed):
        if not any(x):
            continue
        key = (quadratic_form(entries, x), canonical_sign(x))
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return EnumResult(coefficients=best[1], squared_norm=best[0])


def run_vqe(
    B: Basis,
    enc: IntegerEncoding,
    H: IsingHamiltonian,
    spec: AnsatzSpec,
    mode: CostMode,
    settings: OptimizerSettings = OptimizerSettings(),
    seed: int = 0,
    final_shots: int = FINAL_SHOTS,
) -> VqeRunResult:
    """完整流程: 优化、与目标集合的重叠度、最终采样得到的最短向量"""
    zero = zero_mask(enc)
    result = optimize(H, spec, mode, settings, seed=seed, zero_set=zero)
    state = apply_ansatz(spec, result.theta)
    targets = target_set(B, enc)
    G = gram(B)
    best = sample_solution(state, final_shots, enc, G, seed=seed)
    minima = shortest_vectors(B)
    result = result.model_copy(
        update={
            "rank": B.n,
            "overlap": overlap(state, targets),
            "best_vector": best.coefficients if best else None,
            "best_norm": best.squared_norm if best else None,
            "shortest_norm": minima[0].squared_norm,
        }
    )
    logger.info(
        f"VQE 完成: rank={B.n}, N={spec.n_qubits}, 迭代 {result.iterations}, "
        f"重叠度 {result.overlap:.4f}, 找到最短向量 {result.success}"
    )
    return result