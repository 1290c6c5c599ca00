from .base import EnumResult, canonical_sign, pick_canonical
from .search import (
    BOX_LIMIT,
    MAX_RANK,
    NODE_BUDGET,
    LatticeSearch,
    box_search,
    enumerate_ball,
    quadratic_form,
    radius_schedule,
    shortest_vector,
    shortest_vectors,
)

__all__ = [
    "BOX_LIMIT",
    "EnumResult",
    "LatticeSearch",
    "MAX_RANK",
    "NODE_BUDGET",
    "box_search",
    "canonical_sign",
    "enumerate_ball",
    "pick_canonical",
    "quadratic_form",
    "radius_schedule",
    "shortest_vector",
    "shortest_vectors",
]
