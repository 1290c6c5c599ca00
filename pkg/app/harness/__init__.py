from .config import ExperimentConfig, InstanceSettings
from .experiments import (
    ExperimentOutput,
    hamiltonian_for,
    instance_for,
    run_cvar_sweep,
    run_inclusion_table,
    run_jobs,
    run_qubit_scaling,
    run_vqe_campaign,
)
from .output import append_csv, read_csv, write_csv, write_sidecar
from .scaling import dual_reduced_qubits, parse_reduction, reduce_dual, scaling_reference
from .seeds import derive_seed
from .settings import default_jobs, max_qubits
from .summary import CampaignSummary, SummaryRow, success_probability, summarize

__all__ = [
    "CampaignSummary",
    "ExperimentConfig",
    "ExperimentOutput",
    "InstanceSettings",
    "SummaryRow",
    "append_csv",
    "default_jobs",
    "derive_seed",
    "dual_reduced_qubits",
    "hamiltonian_for",
    "instance_for",
    "max_qubits",
    "parse_reduction",
    "read_csv",
    "reduce_dual",
    "run_cvar_sweep",
    "run_inclusion_table",
    "run_jobs",
    "run_qubit_scaling",
    "run_vqe_campaign",
    "scaling_reference",
    "success_probability",
    "summarize",
    "write_csv",
    "write_sidecar",
]
