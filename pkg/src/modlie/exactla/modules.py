"""Modules given by action matrices: spinning, envelopes, radical and socle.

The socle is computed as the common kernel of the Jacobson radical of the
associative envelope.  Over F_p the radical comes from Ronyai's
characteristic-p trace criterion: with integer lifts a~ of the matrices,

    g_i(a) = (Tr(a~^(p^i)) mod p^(i+1)) / p^i,
    I_{-1} = A,  I_i = {a in I_{i-1} : g_i(ab) = 0 for all b in A},

and rad A = I_l for l = floor(log_p n).  Each g_i is linear on I_{i-1}, and
I_i is the largest right ideal inside I_{i-1} cap ker g_i, which we obtain by
spinning annihilators.  Over Q the radical is the kernel of the trace form.

``socle_bruteforce`` is an independent oracle for tiny modules over small
prime fields: it sums the cyclic submodules that meet the current sum
trivially, visiting vectors in order of the dimension they generate.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .fields import Field
from .linalg import EchelonBuilder, Subspace, kernel, matmul, rref

ENVELOPE_LIMIT = 65536


class EnvelopeTooLarge(RuntimeError):
    pass


class InconsistentAction(ValueError):
    pass


def spin(actions: Sequence[np.ndarray], seeds, F: Field) -> Subspace:
    """Smallest subspace containing ``seeds`` and stable under every action."""
    seeds = F.array(seeds)
    if seeds.ndim == 1:
        seeds = seeds.reshape(1, -1)
    tacts = [np.ascontiguousarray(A.T) for A in actions]
    return _spin_rows(tacts, seeds, F)


@dataclass
class ModuleAction:
    """Action of a Lie algebra on F^dim, one matrix per acting basis element.

    ``structure`` optionally holds the acting algebra's structure constants
    (``[x_i, x_j] = sum_k structure[i, j, k] x_k``) for consistency checks
    and cohomology.
    """

    field: Field
    actions: list[np.ndarray]
    structure: np.ndarray | None = None
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        F = self.field
        self.actions = [F.array(A) for A in self.actions]
        if not self.actions:
            raise ValueError("need at least one action matrix (use a zero matrix for the zero action)")
        self.dim = self.actions[0].shape[0]
        for A in self.actions:
            if A.shape != (self.dim, self.dim):
                raise ValueError("action matrices must be square of a common size")

    def bracket_defect(self) -> int:
        """Number of basis pairs where action([x,y]) != [action(x), action(y)]."""
        if self.structure is None:
            return 0
        F = self.field
        d = len(self.actions)
        bad = 0
        for i in range(d):
            for j in range(i + 1, d):
                lhs = F.zeros((self.dim, self.dim))
                for k in np.flatnonzero(self.structure[i, j] != 0):
                    lhs = lhs + F.scalar(self.structure[i, j, k]) * self.actions[k]
                Ai, Aj = self.actions[i], self.actions[j]
                rhs = matmul(Ai, Aj, F) - matmul(Aj, Ai, F)
                if np.any(F.reduce(lhs - rhs) != 0):
                    bad += 1
        return bad

    def check(self) -> None:
        if self.bracket_defect():
            raise InconsistentAction("action does not respect the acting algebra's brackets")

    def restrict(self, sub: Subspace) -> ModuleAction:
        """Action on an invariant subspace, in the coordinates of ``sub.basis``."""
        mats = []
        for A in self.actions:
            imgs = matmul(sub.basis, np.ascontiguousarray(A.T), self.field)
            coords = []
            for v in imgs:
                c = sub.coordinates(v)
                if c is None:
                    raise ValueError("subspace is not invariant")
                coords.append(c)
            mats.append(np.array(coords).T if coords else self.field.zeros((0, 0)))
        return ModuleAction(self.field, mats, self.structure)

    def invariants(self) -> Subspace:
        """Common kernel of all action matrices."""
        F = self.field
        K = kernel(np.concatenate(self.actions), F)
        return Subspace(F, self.dim, K if len(K) else None)


def spin_submodule(act: ModuleAction, seeds) -> Subspace:
    seeds = act.field.array(seeds)
    if seeds.size == 0:
        return Subspace.zero(act.field, act.dim)
    return spin(act.actions, seeds, act.field)


# -- associative envelope -------------------------------------------------------


def _envelope(act: ModuleAction, limit: int = ENVELOPE_LIMIT) -> EchelonBuilder:
    """Span of all words in the action matrices (with 1), as flattened n*n vectors."""
    F, n = act.field, act.dim
    gens = [A for A in act.actions if np.any(A != 0)]
    E = EchelonBuilder(F, n * n)
    frontier = E.absorb(F.eye(n).reshape(1, -1))
    while len(frontier) and gens:
        k = len(frontier)
        X = frontier.reshape(k * n, n)
        frontier = E.absorb(np.concatenate([matmul(X, g, F).reshape(k, n * n) for g in gens]))
        if E.dim > limit:
            raise EnvelopeTooLarge(f"envelope dimension exceeds {limit}")
    return E


def envelope_dim(act: ModuleAction) -> int:
    return _envelope(act).dim


def _right_mult_maps(E: EchelonBuilder, gens: list[np.ndarray], F: Field, n: int) -> list[np.ndarray]:
    """Matrices (in envelope coordinates) of right multiplication by each generator."""
    B = E.rows()
    m = len(B)
    X = B.reshape(m * n, n)
    maps = []
    for g in gens:
        C, resid = E.coordinates(matmul(X, g, F).reshape(m, n * n))
        assert not np.any(resid != 0), "envelope is not closed"
        maps.append(C)
    return maps


def _spin_rows(maps: list[np.ndarray], seeds: np.ndarray, F: Field) -> Subspace:
    """Span of seeds closed under v -> v @ M for each M in maps."""
    E = EchelonBuilder(F, seeds.shape[1])
    frontier = E.absorb(seeds)
    while len(frontier) and maps:
        frontier = E.absorb(np.concatenate([matmul(frontier, M, F) for M in maps]))
    return E.subspace()


def _annihilator(W: Subspace, F: Field) -> np.ndarray:
    """Basis (rows) of {x : w . x = 0 for all w in W}."""
    if W.dim == 0:
        return F.eye(W.ambient)
    return kernel(W.basis, F)


def _lifted_trace_powers(mats: np.ndarray, p: int, i: int) -> np.ndarray:
    """g_i of each matrix in a stack (entries in [0, p))."""
    mod = p ** (i + 1)
    n = mats.shape[1]
    out = np.empty(len(mats), dtype=np.int64)
    exact = n * (mod - 1) ** 2 < 2**53
    for s, a in enumerate(mats):
        r = np.eye(n, dtype=np.int64)
        b = a.astype(np.int64)
        e = p**i
        while e:
            if e & 1:
                r = _mm(r, b, mod, exact)
            e >>= 1
            if e:
                b = _mm(b, b, mod, exact)
        t = int(np.trace(r)) % mod
        out[s] = t // p**i
    return out


def _mm(a: np.ndarray, b: np.ndarray, mod: int, exact: bool) -> np.ndarray:
    if exact:
        return np.mod((a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64), mod)
    return np.mod(a.astype(object) @ b.astype(object), mod).astype(np.int64)


def radical(act: ModuleAction, limit: int = ENVELOPE_LIMIT) -> np.ndarray:
    """Basis of the Jacobson radical of the envelope, as a stack of matrices."""
    F, n = act.field, act.dim
    E = _envelope(act, limit)
    Abasis = E.rows()
    m = len(Abasis)
    gens = [g for g in act.actions if np.any(g != 0)]
    basis = Abasis.reshape(m, n, n)
    if m == 1:
        return F.zeros((0, n, n))
    maps = _right_mult_maps(E, gens, F, n)
    if F.p is None:
        # rad A = {a : Tr(ab) = 0 for all b}
        G = F.zeros((m, m))
        for s in range(m):
            for t in range(m):
                G[s, t] = sum(basis[s].reshape(-1) * basis[t].T.reshape(-1))
        K = kernel(G, F)
        return matmul(K, Abasis, F).reshape(-1, n, n) if len(K) else F.zeros((0, n, n))

    p = F.p
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    # I is tracked by its annihilator W in coordinate space: I = W^perp.
    W = Subspace(F, m)
    I_basis = F.eye(m)
    for i in range(levels + 1):
        if len(I_basis) == 0:
            break
        mats = matmul(I_basis, Abasis, F).reshape(-1, n, n)
        vals = _lifted_trace_powers(mats, p, i) % p
        if not np.any(vals):
            continue
        ell = _functional_on(I_basis, vals, F)
        seeds = np.concatenate([W.basis, ell.reshape(1, -1)])
        W = _spin_rows([np.ascontiguousarray(M.T) for M in maps], seeds, F)
        I_basis = _annihilator(W, F)
    if len(I_basis) == 0:
        return F.zeros((0, n, n))
    return matmul(I_basis, Abasis, F).reshape(-1, n, n)


def _functional_on(B: np.ndarray, vals: np.ndarray, F: Field) -> np.ndarray:
    """A vector ell with B @ ell = vals (B has independent rows)."""
    k, m = B.shape
    R, piv = rref(B, F)
    # B = C R with C = B[:, piv] invertible; solve C y = vals, put y on the pivots
    C = np.ascontiguousarray(B[:, piv])
    aug = np.concatenate([C, vals.reshape(-1, 1)], axis=1)
    R2, piv2 = rref(aug, F)
    y = R2[:, k] if len(R2) else F.zeros(k)
    ell = F.zeros(m)
    for r_, c in enumerate(piv):
        ell[c] = y[r_]
    return ell


def socle(act: ModuleAction, limit: int = ENVELOPE_LIMIT) -> Subspace:
    """Largest semisimple submodule: the vectors killed by the radical."""
    F, n = act.field, act.dim
    rad = radical(act, limit)
    if len(rad) == 0:
        return Subspace.whole(F, n)
    K = kernel(rad.reshape(-1, n), F)
    return Subspace(F, n, K if len(K) else None)


def is_completely_reducible(act: ModuleAction) -> bool:
    return socle(act).dim == act.dim


# -- brute-force oracle -----------------------------------------------------------


def _batched_rank(X: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices (B, r, c) over F_p; loops over the c columns."""
    dtype = np.int16 if p * p < 2**15 else np.int64
    X = (X % p).astype(dtype)
    B, r, c = X.shape
    inv = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=dtype)
    used = np.zeros((B, r), dtype=bool)
    rk = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    for j in range(c):
        col = X[:, :, j]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        pr = cand.argmax(axis=1)
        prow = X[ar, pr] * inv[X[ar, pr, j]][:, None] % p
        f = col.copy()
        f[ar, pr] = 0
        f[~has] = 0  # no pivot in this column: leave the matrix alone
        X -= f[:, :, None] * prow[:, None, :]
        X %= p
        X[ar[has], pr[has]] = prow[has]
        used[ar[has], pr[has]] = True
        rk += has
    return rk


def _points(n: int, p: int) -> np.ndarray:
    """One representative (first nonzero entry 1) of every line in F_p^n."""
    pts = []
    for lead in range(n):
        tail = n - lead - 1
        for rest in itertools.product(range(p), repeat=tail):
            v = [0] * lead + [1] + list(rest)
            pts.append(v)
    return np.array(pts, dtype=np.int64)


def socle_bruteforce(act: ModuleAction) -> Subspace:
    """Sum of all simple submodules by exhaustive search (tiny modules only)."""
    F, n = act.field, act.dim
    if F.p is None or F.p ** n > 10**6:
        raise ValueError("brute-force socle needs a small module over a small prime field")
    p = F.p
    E = _envelope(act).rows().reshape(-1, n, n)  # m x n x n
    pts = _points(n, p)
    # M_v[s] = a_s v ; generated submodule is the row space of M_v
    Mv = np.einsum("sij,bj->bsi", E, pts) % p
    d = _batched_rank(Mv, p)
    S = Subspace(F, n)
    for k in sorted(set(d.tolist())):
        cand = np.flatnonzero(d == k)
        if S.dim:
            # A v is simple and new iff it meets the current sum trivially
            Sb = np.broadcast_to(S.basis, (cand.size,) + S.basis.shape)
            joint = _batched_rank(np.concatenate([Mv[cand], Sb], axis=1), p)
            cand = cand[joint == k + S.dim]
        for b in cand:
            if S.contains(pts[b]):
                continue
            S = S + Subspace(F, n, Mv[b])
    return S
