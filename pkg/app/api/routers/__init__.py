from .lattice import router as lattice_router
from .hamiltonian import router as hamiltonian_router
from .vqe import router as vqe_router

__all__ = ["lattice_router", "hamiltonian_router", "vqe_router"]
