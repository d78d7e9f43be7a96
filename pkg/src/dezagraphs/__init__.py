"""Deza graphs with b = k - 1 and beta = 1: constructions, checks, decomposition."""
from ._kernels import BACKEND
from .errors import DezaError, GateError
from .graph import Graph, Permutation, classify

__version__ = "0.1.0"

__all__ = ["BACKEND", "DezaError", "GateError", "Graph", "Permutation", "classify", "__version__"]
