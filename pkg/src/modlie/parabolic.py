"""Standard parabolic subalgebras and the level filtration of their nilradicals.

For J a set of simple indices the level of a root is the sum of its
coefficients at simple roots outside J.  The standard parabolic is spanned
by the Cartan subalgebra and the root vectors of level >= 0; the Levi by the
level-0 part and the nilradical q by positive levels.  q_i is spanned by the
roots of level >= i, so each layer q_i/q_{i+1} is represented by the root
vectors of level exactly i.  ``opposite=True`` uses the negative levels
instead, giving the opposite parabolic with the same Levi.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .chevalley import LieAlgebra
from .exactla.linalg import Subspace, matmul
from .exactla.modules import ModuleAction
from .rootsys import RootSystemError


@dataclass(frozen=True)
class ParabolicDatum:
    J: tuple[int, ...]
    opposite: bool
    levi: Subspace
    nilrad: Subspace
    levi_indices: np.ndarray
    layers: tuple[tuple[int, np.ndarray], ...]  # (level, basis indices of root vectors)
    levels: np.ndarray  # signed level of each basis vector (0 on the Cartan)

    @property
    def dim(self) -> int:
        return self.levi.dim + self.nilrad.dim

    def layer(self, i: int) -> np.ndarray:
        for level, idx in self.layers:
            if level == i:
                return idx
        return np.zeros(0, dtype=np.int64)

    def layer_dims(self) -> list[dict[str, int]]:
        return [{"level": level, "dim": len(idx)} for level, idx in self.layers]


def _span_of(L: LieAlgebra, idx: np.ndarray) -> Subspace:
    F = L.field
    if len(idx) == 0:
        return Subspace.zero(F, L.dim)
    rows = F.zeros((len(idx), L.dim))
    rows[np.arange(len(idx)), idx] = 1
    return Subspace(F, L.dim, rows)


def standard_parabolic(L: LieAlgebra, J: Iterable[int], opposite: bool = False) -> ParabolicDatum:
    rs = L.rs
    J = tuple(sorted(set(int(j) for j in J)))
    for j in J:
        if not 1 <= j <= rs.rank:
            raise RootSystemError(f"simple index {j} out of range 1..{rs.rank}")
    sign = -1 if opposite else 1
    levels = np.zeros(L.dim, dtype=np.int64)
    for k, r in enumerate(rs.roots):
        levels[k] = sign * rs.level(r, J)
    levi_idx = np.flatnonzero(levels == 0)
    layers = tuple((i, np.flatnonzero(levels == i)) for i in range(1, int(levels.max(initial=0)) + 1))
    nil_idx = np.flatnonzero(levels > 0)
    return ParabolicDatum(
        J=J,
        opposite=opposite,
        levi=_span_of(L, levi_idx),
        nilrad=_span_of(L, nil_idx),
        levi_indices=levi_idx,
        layers=layers,
        levels=levels,
    )


def parabolic_subspace(L: LieAlgebra, pd: ParabolicDatum) -> Subspace:
    return pd.levi + pd.nilrad


def layer_action(L: LieAlgebra, pd: ParabolicDatum, sub: Subspace, i: int) -> ModuleAction:
    """ad(sub basis) on q_i/q_{i+1}, in the root-vector basis of the layer."""
    F = L.field
    if not sub <= pd.levi:
        raise ValueError("subalgebra is not inside the Levi")
    idx = pd.layer(i)
    n = len(idx)
    if sub.dim == 0:
        return ModuleAction(F, [F.zeros((n, n))])
    mats = []
    for x in sub.basis:
        A = L.ad(x)
        # a Levi element preserves levels exactly, so no higher-level terms appear
        mats.append(np.ascontiguousarray(A[np.ix_(idx, idx)]))
    return ModuleAction(F, mats, subalgebra_structure(L, sub))


def subalgebra_structure(L: LieAlgebra, sub: Subspace) -> np.ndarray:
    """Structure constants of a subalgebra in the basis ``sub.basis``."""
    F = L.field
    B = sub.basis
    d = len(B)
    T = F.zeros((d, d, d))
    for i in range(d):
        imgs = matmul(L.ad(B[i]), np.ascontiguousarray(B.T), F).T
        for j in range(d):
            c = sub.coordinates(imgs[j])
            if c is None:
                raise ValueError("subspace is not a subalgebra")
            T[i, j] = c
    return T


def level_additivity_failures(L: LieAlgebra, pd: ParabolicDatum) -> int:
    """Root pairs whose bracket leaves the level predicted by additivity."""
    bad = 0
    T = L.T
    n = L.nroots
    for a in range(n):
        for b in range(n):
            tgt = np.flatnonzero(T[a, b] != 0)
            if any(pd.levels[k] != pd.levels[a] + pd.levels[b] for k in tgt):
                bad += 1
    return bad


__all__ = [
    "ParabolicDatum",
    "layer_action",
    "level_additivity_failures",
    "parabolic_subspace",
    "standard_parabolic",
    "subalgebra_structure",
]
