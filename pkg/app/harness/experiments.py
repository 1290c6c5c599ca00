"""批量实验: 包含概率表、比特数缩放、CVaR α 扫描、VQE 求解实验。

工作按实例划分，每个实例的种子由主种子派生，串行与并行执行结果一致。
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple, TypeVar

import numpy as np
from pydantic import BaseModel, Field

from app.encoding import (
    InclusionEstimate,
    IntegerEncoding,
    IsingHamiltonian,
    MappingSpec,
    any_in_box,
    build_penalty_qubo,
    build_qubo,
    default_penalty,
    encode_integers,
    inclusion_reference,
    qubo_to_ising,
)
from app.enumeration import shortest_vectors
from app.errors import (
    BudgetExceededError,
    InfeasibleRadiusError,
    InstabilityError,
    QubitLimitError,
    ReductionTimeoutError,
)
from app.lattice import Basis, gram, prepare_instance, sample_qary
from app.vqe import VqeRunResult, run_vqe
from .config import ExperimentConfig, InstanceSettings
from .output import write_csv, write_sidecar
from .scaling import dual_reduced_qubits, parse_reduction, scaling_reference
from .seeds import derive_seed
from .settings import default_jobs
from .summary import CampaignSummary, summarize

logger = logging.getLogger("harness")

T = TypeVar("T")
R = TypeVar("R")

INCLUSION_FIELDS = ["rank", "qubits", "strategy", "probability", "count", "seed0", "failures", "reference"]
SCALING_FIELDS = ["n", "reduction", "mean_qubits", "std", "count", "skipped", "reference"]
RUN_FIELDS = [
    "label",
    "seed",
    "rank",
    "n_qubits",
    "iterations",
    "evaluations",
    "final_cost",
    "converged",
    "overlap",
    "best_norm",
    "shortest_norm",
    "success",
]
# VQE 实例种子与实例生成种子区分
VQE_STREAM = 1


class ExperimentOutput(BaseModel):
    csv_path: str
    records: List[dict] = Field(default_factory=list)
    summary: Optional[CampaignSummary] = None


def resolve_jobs(config: ExperimentConfig) -> int:
    return config.jobs if config.jobs is not None else default_jobs()


def run_jobs(worker: Callable[[T], R], tasks: Iterable[T], jobs: int) -> List[R]:
    """按任务顺序返回结果；jobs=1 时在当前进程内执行"""
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as exe:
        return list(exe.map(worker, tasks))


def instance_for(instance: InstanceSettings, n: int, seed: int) -> Basis:
    d, k = instance.shape(n)
    return prepare_instance(d, k, instance.q, n, seed)


def hamiltonian_for(B: Basis, config: ExperimentConfig, seed: int) -> Tuple[IntegerEncoding, IsingHamiltonian]:
    bounds = config.mapping.bounds_for(B, seed)
    enc = encode_integers(bounds, config.scheme)
    G = gram(B)
    if config.scheme == "penalty":
        P = config.penalty if config.penalty is not None else default_penalty(B)
        q = build_penalty_qubo(G, enc, P)
    else:
        q = build_qubo(G, enc)
    return enc, qubo_to_ising(q)


def _out(config: ExperimentConfig, name: str) -> Path:
    return Path(config.out_dir) / name


# ---------- 包含概率 ----------


class InclusionTask(BaseModel):
    n: int
    seed: int
    instance: InstanceSettings
    mappings: List[MappingSpec]


def _inclusion_worker(task: InclusionTask) -> Optional[List[bool]]:
    B = instance_for(task.instance, task.n, task.seed)
    try:
        minima = shortest_vectors(B)
    except (BudgetExceededError, InstabilityError) as e:
        logger.warning(f"rank={task.n} seed={task.seed} 枚举失败，不计入分母: {e}")
        return None
    # 同一实例的最短向量在各映射之间共用
    return [any_in_box(spec.bounds_for(B, task.seed), minima) for spec in task.mappings]


def run_inclusion_table(config: ExperimentConfig) -> ExperimentOutput:
    """各 (秩, 比特预算, 策略) 下最短向量落在系数盒内的比例"""
    records = []
    jobs = resolve_jobs(config)
    for n in config.ranks:
        mappings = [
            MappingSpec(strategy=strategy, qubits=budget if budget is not None else n)
            for budget in config.budgets
            for strategy in config.strategies
        ]
        seeds = [derive_seed(config.seed, n, i) for i in range(config.count)]
        tasks = [InclusionTask(n=n, seed=s, instance=config.instance, mappings=mappings) for s in seeds]
        outcomes = run_jobs(_inclusion_worker, tasks, jobs)
        for j, spec in enumerate(mappings):
            estimate = InclusionEstimate()
            for flags in outcomes:
                if flags is None:
                    estimate.failures += 1
                else:
                    estimate.evaluated += 1
                    estimate.included += int(flags[j])
            one_bit = spec.strategy in ("uniform", "uniform-random") and spec.qubits == n
            records.append(
                {
                    "rank": n,
                    "qubits": spec.qubits,
                    "strategy": spec.strategy,
                    "probability": estimate.probability,
                    "count": estimate.evaluated,
                    "seed0": seeds[0],
                    "failures": estimate.failures,
                    "reference": inclusion_reference(n) if one_bit else None,
                }
            )
            logger.info(
                f"rank={n}, qubits={spec.qubits}, {spec.strategy}: p={estimate.probability:.3f} "
                f"({estimate.included}/{estimate.evaluated}, 失败 {estimate.failures})"
            )
    path = write_csv(_out(config, "inclusion.csv"), INCLUSION_FIELDS, records)
    write_sidecar(path, config)
    return ExperimentOutput(csv_path=str(path), records=records)


# ---------- 比特数缩放 ----------


class ScalingTask(BaseModel):
    n: int
    reduction: str
    seed: int
    q: int
    delta: float
    timeout: Optional[float] = None


def _scaling_worker(task: ScalingTask) -> Optional[int]:
    B = sample_qary(task.n, task.n // 2, task.q, task.seed)
    deadline = time.perf_counter() + task.timeout if task.timeout else None
    try:
        return dual_reduced_qubits(B, task.reduction, delta=task.delta, deadline=deadline)
    except ReductionTimeoutError:
        logger.warning(f"n={task.n}, {task.reduction}, seed={task.seed} 约化超时，跳过")
        return None


def run_qubit_scaling(config: ExperimentConfig) -> ExperimentOutput:
    """对偶约化后 A = gh 处所需比特数随 n 的变化，每个 n 重复 repeats 次"""
    for reduction in config.reductions:
        parse_reduction(reduction)
    tasks = [
        ScalingTask(
            n=n,
            reduction=reduction,
            seed=derive_seed(config.seed, n, r),
            q=config.instance.q,
            delta=config.delta,
            timeout=config.timeout,
        )
        for n in config.ranks
        for reduction in config.reductions
        for r in range(config.repeats)
    ]
    results = run_jobs(_scaling_worker, tasks, resolve_jobs(config))
    grouped: Dict[Tuple[int, str], List[Optional[int]]] = {}
    for task, qubits in zip(tasks, results):
        grouped.setdefault((task.n, task.reduction), []).append(qubits)
    records = []
    for (n, reduction), values in grouped.items():
        done = [v for v in values if v is not None]
        records.append(
            {
                "n": n,
                "reduction": reduction,
                "mean_qubits": float(np.mean(done)) if done else None,
                "std": float(np.std(done)) if done else None,
                "count": len(done),
                "skipped": len(values) - len(done),
                "reference": scaling_reference(n, reduction),
            }
        )
        if done:
            logger.info(f"n={n}, {reduction}: 平均 {np.mean(done):.1f} 个量子比特 ({len(done)} 次)")
    path = write_csv(_out(config, "scaling.csv"), SCALING_FIELDS, records)
    write_sidecar(path, config)
    return ExperimentOutput(csv_path=str(path), records=records)


# ---------- VQE ----------


class VqeTask(BaseModel):
    n: int
    index: int
    alpha: float
    config: ExperimentConfig


def _vqe_worker(task: VqeTask) -> Optional[VqeRunResult]:
    config = task.config
    seed = derive_seed(config.seed, task.n, task.index)
    try:
        B = instance_for(config.instance, task.n, seed)
        enc, H = hamiltonian_for(B, config, seed)
        return run_vqe(
            B,
            enc,
            H,
            config.ansatz(enc.n_bits),
            config.cost_mode(task.alpha),
            config.optimizer,
            seed=derive_seed(config.seed, task.n, task.index, VQE_STREAM),
            final_shots=config.samples,
        )
    except QubitLimitError:
        raise
    except (BudgetExceededError, InstabilityError, InfeasibleRadiusError) as e:
        logger.warning(f"rank={task.n} 实例 {task.index} 失败: {e}")
        return None


def _run_records(label: str, results: List[Optional[VqeRunResult]]) -> List[dict]:
    return [{"label": label, **r.csv_row()} for r in results if r is not None]


def run_cvar_sweep(config: ExperimentConfig) -> ExperimentOutput:
    """同一批实例上对每个 α 运行完整 VQE (秩取 ranks[0])"""
    n = config.ranks[0]
    tasks = [VqeTask(n=n, index=i, alpha=a, config=config) for a in config.alphas for i in range(config.count)]
    results = run_jobs(_vqe_worker, tasks, resolve_jobs(config))
    summary = CampaignSummary()
    runs = []
    for k, alpha in enumerate(config.alphas):
        chunk = results[k * config.count : (k + 1) * config.count]
        row = summarize({"alpha": alpha}, chunk, config.samples)
        summary.rows.append(row)
        runs.extend(_run_records(f"alpha={alpha}", chunk))
        logger.info(f"α={alpha}: 平均重叠度 {row.mean_overlap:.4f}, 中位数 {row.median_overlap:.4f}, p={row.p_success:.3f}")
    fields = ["alpha", "mean_overlap", "median_overlap", f"p{config.samples}", "count", "errors", "non_converged"]
    records = summary.records()
    path = write_csv(_out(config, "cvar_sweep.csv"), fields, records)
    write_sidecar(path, config)
    write_csv(_out(config, "cvar_sweep_runs.csv"), RUN_FIELDS, runs)
    return ExperimentOutput(csv_path=str(path), records=records, summary=summary)


def run_vqe_campaign(config: ExperimentConfig) -> ExperimentOutput:
    """每个秩上 count 个实例的 VQE，统计重叠度与迭代次数"""
    tasks = [VqeTask(n=n, index=i, alpha=config.alpha, config=config) for n in config.ranks for i in range(config.count)]
    results = run_jobs(_vqe_worker, tasks, resolve_jobs(config))
    summary = CampaignSummary()
    runs = []
    for k, n in enumerate(config.ranks):
        chunk = results[k * config.count : (k + 1) * config.count]
        row = summarize({"rank": n}, chunk, config.samples)
        summary.rows.append(row)
        runs.extend(_run_records(f"rank={n}", chunk))
        logger.info(f"rank={n}: 平均重叠度 {row.mean_overlap:.4f}, 平均迭代 {row.mean_iters:.1f}")
    fields = [
        "rank",
        "mean_overlap",
        "std_overlap",
        "mean_iters",
        "std_iters",
        "count",
        "median_overlap",
        f"p{config.samples}",
        "samples_to_solution",
        "errors",
        "non_converged",
    ]
    records = summary.records()
    path = write_csv(_out(config, "campaign.csv"), fields, records)
    write_sidecar(path, config)
    write_csv(_out(config, "campaign_runs.csv"), RUN_FIELDS, runs)
    return ExperimentOutput(csv_path=str(path), records=records, summary=summary)
