from .base import BaseMCPServer
from .lattice import LatticeMCPServer

__all__ = ["BaseMCPServer", "LatticeMCPServer"]
