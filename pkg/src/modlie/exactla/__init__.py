from .fields import GF, QQ, DenominatorError, Field
from .linalg import Subspace, kernel, matmul, matpow, rank, rref, solve, solve_many, span

__all__ = [
    "GF",
    "QQ",
    "DenominatorError",
    "Field",
    "Subspace",
    "kernel",
    "matmul",
    "matpow",
    "rank",
    "rref",
    "solve",
    "solve_many",
    "span",
]
