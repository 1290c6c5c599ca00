from .base import (
    BoundsVector,
    CoordinateLayout,
    IntegerEncoding,
    IsingHamiltonian,
    QuboProblem,
    bits_to_bound,
    bound_to_bits,
)
from .bounds import (
    InclusionEstimate,
    MappingSpec,
    any_in_box,
    dual_bounds,
    dual_bounds_from_gram,
    floor_bounds,
    inclusion_probability,
    inclusion_reference,
    naive_mapping,
    qubit_budget_bound,
    qubit_count,
)
from .integer import (
    decode_bitstring,
    decode_index,
    encode_integers,
    penalty_term,
    penalty_variable_bound,
)
from .interchange import dump_hamiltonian, load_hamiltonian
from .qubo import build_penalty_qubo, build_qubo, default_penalty, qubo_to_ising

__all__ = [
    "BoundsVector",
    "CoordinateLayout",
    "InclusionEstimate",
    "IntegerEncoding",
    "IsingHamiltonian",
    "MappingSpec",
    "QuboProblem",
    "any_in_box",
    "bits_to_bound",
    "bound_to_bits",
    "build_penalty_qubo",
    "build_qubo",
    "decode_bitstring",
    "decode_index",
    "default_penalty",
    "dual_bounds",
    "dual_bounds_from_gram",
    "dump_hamiltonian",
    "encode_integers",
    "floor_bounds",
    "inclusion_probability",
    "inclusion_reference",
    "load_hamiltonian",
    "naive_mapping",
    "penalty_term",
    "penalty_variable_bound",
    "qubit_budget_bound",
    "qubit_count",
    "qubo_to_ising",
]
