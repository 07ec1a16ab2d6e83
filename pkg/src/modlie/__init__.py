"""Exact computations in Chevalley-basis Lie algebras over F_p and Q."""

from __future__ import annotations

from .chevalley import LieAlgebra, lie_algebra
from .rootsys import RootSystem, root_system

__version__ = "0.1.0"

__all__ = ["LieAlgebra", "RootSystem", "__version__", "lie_algebra", "root_system"]
