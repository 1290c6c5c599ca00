from .base import Basis, DualBasis, GramMatrix, GsoData
from .geometry import (
    dual_basis,
    gaussian_heuristic,
    gram,
    gram_determinant,
    gso,
    gso_coefficients,
    log2_orthogonality_defect,
    log_volume,
    orthogonality_defect,
    scaled_dual,
    volume,
)
from .io import format_basis, parse_basis, read_basis, write_basis
from .qary import DEFAULT_Q, philox, prepare_instance, sample_qary

__all__ = [
    "Basis",
    "DualBasis",
    "GramMatrix",
    "GsoData",
    "DEFAULT_Q",
    "dual_basis",
    "format_basis",
    "gaussian_heuristic",
    "gram",
    "gram_determinant",
    "gso",
    "gso_coefficients",
    "log2_orthogonality_defect",
    "log_volume",
    "orthogonality_defect",
    "parse_basis",
    "philox",
    "prepare_instance",
    "read_basis",
    "sample_qary",
    "scaled_dual",
    "volume",
    "write_basis",
]
