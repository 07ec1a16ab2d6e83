"""First cohomology of a Lie algebra with coefficients in a module.

The acting algebra is given by structure constants T (``[x_i, x_j] =
sum_k T[i, j, k] x_k``) and the module by a :class:`ModuleAction` whose k-th
matrix is the action of x_k.  A 1-cochain is an n x d matrix whose column k
is phi(x_k); it is a cocycle when

    phi([x, y]) = x . phi(y) - y . phi(x)

on all basis pairs.  Coboundaries are phi_v(x) = x . v.

A cocycle also gives the complement {x + phi(x)} of V in the semidirect
product, which we realise inside gl(n+1) as block matrices [[A_x, phi(x)],
[0, 0]].  Conjugating by the unipotent matrix [[1, v], [0, 1]] replaces phi
by phi - phi_v.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chevalley import LieAlgebra
from .exactla.fields import Field
from .exactla.linalg import Subspace, kernel, matmul, matpow, solve
from .exactla.modules import InconsistentAction, ModuleAction
from .parabolic import ParabolicDatum, layer_action, subalgebra_structure
from .sl2core import truncated_exp

# x^[p] on the (e, f, h) basis of sl2: e and f go to 0, h is toral.
SL2_P_MAP = np.array([[0, 0, 0], [0, 0, 0], [0, 0, 1]], dtype=np.int64)


@dataclass
class CocycleSpace:
    d: int
    n: int
    field: Field
    z1_basis: list[np.ndarray]
    b1_dim: int
    h1_dim: int
    _z1: Subspace = field(repr=False)
    _b1: Subspace = field(repr=False)

    @property
    def z1_dim(self) -> int:
        return len(self.z1_basis)

    def contains(self, phi: np.ndarray) -> bool:
        return self._z1.contains(_flat(phi))

    def is_coboundary(self, phi: np.ndarray) -> bool:
        return self._b1.contains(_flat(phi))

    def class_coordinates(self, phi: np.ndarray) -> np.ndarray:
        """Coordinates of [phi] in H^1 along a fixed complement of B^1 in Z^1."""
        F = self.field
        comp = _complement_in(self._b1, self._z1)
        M = np.concatenate([comp, self._b1.basis]) if self._b1.dim else comp
        sol = solve(M.T, _flat(phi), F)
        if sol is None:
            raise ValueError("not a cocycle")
        return sol[0][: len(comp)]


def _flat(phi: np.ndarray) -> np.ndarray:
    """Column-major flattening: block k holds phi(x_k)."""
    return np.ascontiguousarray(np.asarray(phi).T).reshape(-1)


def _unflat(v: np.ndarray, n: int, d: int) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(v).reshape(d, n).T)


def _complement_in(small: Subspace, big: Subspace) -> np.ndarray:
    """Rows of ``big.basis`` that extend ``small`` to a basis of ``big``."""
    F = small.field
    rows = []
    cur = small
    for v in big.basis:
        if not cur.contains(v):
            rows.append(v)
            cur = cur.add(v)
    return np.array(rows) if rows else F.zeros((0, big.ambient))


def cocycle_matrix(T: np.ndarray, act: ModuleAction) -> np.ndarray:
    """Linear constraints (rows) on vec(phi) expressing the cocycle condition."""
    F = act.field
    d = T.shape[0]
    n = act.dim
    if len(act.actions) != d:
        raise InconsistentAction(f"{len(act.actions)} action matrices for a {d}-dimensional algebra")
    I = F.eye(n)
    blocks = []
    for i in range(d):
        for j in range(i + 1, d):
            row = F.zeros((n, n * d))
            for k in np.flatnonzero(T[i, j] != 0):
                row[:, k * n : (k + 1) * n] += F.scalar(int(T[i, j, k])) * I
            row[:, j * n : (j + 1) * n] -= act.actions[i]
            row[:, i * n : (i + 1) * n] += act.actions[j]
            blocks.append(F.reduce(row))
    if not blocks:
        return F.zeros((0, n * d))
    return np.concatenate(blocks)


def _restricted_rows(act: ModuleAction, p_map: np.ndarray) -> np.ndarray:
    """phi(x_k^[p]) = A_k^(p-1) phi(x_k) for each basis vector x_k."""
    F = act.field
    d, n = len(act.actions), act.dim
    blocks = []
    for k in range(d):
        row = F.zeros((n, n * d))
        for j in np.flatnonzero(np.asarray(p_map[k]) != 0):
            row[:, j * n : (j + 1) * n] += F.scalar(int(p_map[k, j])) * F.eye(n)
        P = F.eye(n)
        for _ in range(F.p - 1):
            P = matmul(P, act.actions[k], F)
        row[:, k * n : (k + 1) * n] -= P
        blocks.append(F.reduce(row))
    return np.concatenate(blocks)


def _is_restricted(act: ModuleAction, p_map: np.ndarray) -> bool:
    F = act.field
    for k, A in enumerate(act.actions):
        rhs = F.zeros((act.dim, act.dim))
        for j in np.flatnonzero(np.asarray(p_map[k]) != 0):
            rhs = rhs + F.scalar(int(p_map[k, j])) * act.actions[j]
        if np.any(matpow(A, F.p, F) != F.reduce(rhs)):
            return False
    return True


def coboundary(act: ModuleAction, v) -> np.ndarray:
    """phi_v(x_k) = A_k v as an n x d matrix."""
    F = act.field
    v = F.array(v)
    return np.stack([matmul(A, v.reshape(-1, 1), F)[:, 0] for A in act.actions], axis=1)


def h1(T: np.ndarray, act: ModuleAction, p_map: np.ndarray | None = None) -> CocycleSpace:
    """Z^1, B^1 and dim H^1 for the algebra with structure constants T acting via ``act``.

    With ``p_map`` (rows: coordinates of x_k^[p]) only restricted cocycles count.
    """
    F = act.field
    T = np.asarray(T)
    d, n = T.shape[0], act.dim
    if act.structure is not None and act.bracket_defect():
        raise InconsistentAction("action does not respect the brackets")
    M = cocycle_matrix(T, act)
    if p_map is not None:
        if F.p is None:
            raise ValueError("restricted cohomology needs a prime field")
        if not _is_restricted(act, p_map):
            raise InconsistentAction("module is not restricted: A_k^p differs from the action of x_k^[p]")
        M = np.concatenate([M, _restricted_rows(act, p_map)])
    Z = kernel(M, F) if len(M) else F.eye(n * d)
    z1 = Subspace(F, n * d, Z if len(Z) else None)
    B = np.stack([_flat(coboundary(act, F.eye(n)[a])) for a in range(n)]) if n else F.zeros((0, 0))
    b1 = Subspace(F, n * d, B if len(B) else None)
    if not z1.contains_all(b1.basis):
        raise InconsistentAction("coboundaries fail the cocycle condition")
    return CocycleSpace(
        d=d,
        n=n,
        field=F,
        z1_basis=[_unflat(z, n, d) for z in z1.basis],
        b1_dim=b1.dim,
        h1_dim=z1.dim - b1.dim,
        _z1=z1,
        _b1=b1,
    )


def is_cocycle(T: np.ndarray, act: ModuleAction, phi: np.ndarray) -> bool:
    M = cocycle_matrix(np.asarray(T), act)
    r = matmul(M, _flat(act.field.array(phi)).reshape(-1, 1), act.field)
    return not np.any(r != 0)


# -- the basis cocycles of H^1(sl2, L(p-2)) -------------------------------------


def gamma_cocycle(p: int, a: int, b: int) -> np.ndarray:
    """gamma_{a,b} on L(p-2): h -> 0, e -> a v_{-(p-2)}, f -> b v_{p-2}.

    Columns follow the (e, f, h) basis; L(p-2) has basis v_0..v_{p-2} of
    weights p-2, ..., -(p-2), so v_{p-2} is the top vector (index 0).
    """
    if p < 3:
        raise ValueError("need p >= 3")
    n = p - 1
    phi = np.zeros((n, 3), dtype=np.int64)
    phi[n - 1, 0] = a % p
    phi[0, 1] = b % p
    return phi


# -- complements in the semidirect product ----------------------------------------


def semidirect_bracket(T: np.ndarray, act: ModuleAction, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Bracket in h |x V with coordinates (h-part, V-part)."""
    F = act.field
    d = T.shape[0]
    x, u = X[:d], X[d:]
    y, w = Y[:d], Y[d:]
    xy = F.zeros(d)
    for i in np.flatnonzero(x != 0):
        for j in np.flatnonzero(y != 0):
            xy = xy + x[i] * y[j] * F.array(T[i, j])
    Ax = sum((x[k] * act.actions[k] for k in range(d)), F.zeros((act.dim, act.dim)))
    Ay = sum((y[k] * act.actions[k] for k in range(d)), F.zeros((act.dim, act.dim)))
    v = matmul(F.reduce(Ax), w.reshape(-1, 1), F)[:, 0] - matmul(F.reduce(Ay), u.reshape(-1, 1), F)[:, 0]
    return F.reduce(np.concatenate([F.reduce(xy), v]))


def complement_from_cocycle(T: np.ndarray, act: ModuleAction, phi: np.ndarray, check: bool = True) -> Subspace:
    """{x + phi(x)} inside h |x V, spanned by (x_k, phi(x_k))."""
    F = act.field
    T = np.asarray(T)
    d, n = T.shape[0], act.dim
    phi = F.array(phi)
    if check and not is_cocycle(T, act, phi):
        raise ValueError("phi is not a cocycle")
    rows = np.concatenate([F.eye(d), phi.T], axis=1)
    return Subspace(F, d + n, rows)


def conjugate_by_unipotent(act: ModuleAction, sub: Subspace, v) -> Subspace:
    """Image of a subspace of h |x V under conjugation by 1 + v: (x, u) -> (x, u - x.v)."""
    F = act.field
    d = len(act.actions)
    v = F.array(v)
    out = []
    for X in sub.basis:
        x, u = X[:d], X[d:]
        xv = F.zeros(act.dim)
        for k in np.flatnonzero(x != 0):
            xv = xv + x[k] * matmul(act.actions[k], v.reshape(-1, 1), F)[:, 0]
        out.append(np.concatenate([x, F.reduce(u - xv)]))
    return Subspace(F, sub.ambient, np.array(out) if out else None)


def is_closed(T: np.ndarray, act: ModuleAction, sub: Subspace) -> bool:
    B = sub.basis
    return all(sub.contains(semidirect_bracket(T, act, B[i], B[j])) for i in range(len(B)) for j in range(i + 1, len(B)))


# -- descent through the level filtration --------------------------------------------


@dataclass
class DescentResult:
    conjugators: list[tuple[int, np.ndarray]]  # (level, v) applied in order as exp(ad v)
    final: Subspace
    obstruction_level: int | None = None
    class_coordinates: np.ndarray | None = None

    @property
    def landed(self) -> bool:
        return self.obstruction_level is None


def _lifts(L: LieAlgebra, levi_coords: np.ndarray, H: Subspace, hbar: Subspace) -> np.ndarray:
    """For each basis vector x of hbar, the element of H whose Levi part is x."""
    F = L.field
    P = H.basis.copy()
    P[:, ~levi_coords] = 0
    X = solve_rows(P, hbar.basis, F)
    if X is None:
        raise ValueError("hprime does not project onto hbar")
    return matmul(X, H.basis, F)


def solve_rows(P: np.ndarray, B: np.ndarray, F: Field) -> np.ndarray | None:
    """X with X P = B (rows of B in the row space of P)."""
    out = []
    for b in B:
        s = solve(np.ascontiguousarray(P.T), b, F)
        if s is None:
            return None
        out.append(s[0])
    return np.array(out) if out else F.zeros((0, P.shape[0]))


def filtered_descent(L: LieAlgebra, pd: ParabolicDatum, hbar: Subspace, hprime: Subspace) -> DescentResult:
    """Conjugate hprime into the Levi one layer at a time, or report the obstruction.

    At level i the Levi part x of each element of the current subalgebra has a
    layer-i component phi(x); phi is a cocycle of hbar on the layer.  When it
    is the coboundary of v the truncated exponential of ad v removes it.
    """
    F = L.field
    if hprime.dim != hbar.dim:
        raise ValueError("hprime and hbar have different dimensions")
    levi_mask = np.zeros(L.dim, dtype=bool)
    levi_mask[pd.levi_indices] = True
    Th = subalgebra_structure(L, hbar)
    H = hprime
    steps: list[tuple[int, np.ndarray]] = []
    for level, idx in pd.layers:
        lifts = _lifts(L, levi_mask, H, hbar)
        phi = np.ascontiguousarray(lifts[:, idx].T)  # n x d
        if not np.any(phi != 0):
            continue
        act = layer_action(L, pd, hbar, level)
        if not is_cocycle(Th, act, phi):
            raise ArithmeticError(f"layer component at level {level} is not a cocycle")
        # phi(x) = [x, v] on the layer means phi = coboundary(v)
        C = np.stack([_flat(coboundary(act, F.eye(act.dim)[a])) for a in range(act.dim)])
        sol = solve(np.ascontiguousarray(C.T), _flat(phi), F)
        if sol is None:
            cs = h1(Th, act)
            return DescentResult(steps, H, level, cs.class_coordinates(phi))
        v = L.field.zeros(L.dim)
        v[idx] = sol[0]
        E = truncated_exp(L, v)
        H = Subspace(F, L.dim, matmul(H.basis, np.ascontiguousarray(E.T), F))
        steps.append((level, v))
    lifts = _lifts(L, levi_mask, H, hbar)
    if np.any(lifts[:, ~levi_mask] != 0):
        raise ArithmeticError("descent finished outside the Levi")
    return DescentResult(steps, H)


__all__ = [
    "CocycleSpace",
    "DescentResult",
    "SL2_P_MAP",
    "coboundary",
    "cocycle_matrix",
    "complement_from_cocycle",
    "conjugate_by_unipotent",
    "filtered_descent",
    "gamma_cocycle",
    "h1",
    "is_closed",
    "is_cocycle",
    "semidirect_bracket",
]
