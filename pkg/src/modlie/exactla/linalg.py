"""Rank, kernels, solving and echelon forms over F_p and Q.

F_p elimination is a blocked Gauss-Jordan: pivots are found column panel by
column panel with a plain elimination, and the rest of the matrix is updated
with one exact floating-point matrix product per panel.  Q elimination is
delegated to sympy's sparse ``DomainMatrix`` over QQ.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np
from sympy import QQ as _SQQ
from sympy.polys.matrices import DomainMatrix

from .fields import Field

_EXACT_FLOAT = 2**53
_PANEL = 64


# -- F_p kernels ---------------------------------------------------------------


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact A @ B mod p for reduced int64 inputs."""
    k = A.shape[1]
    if k == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    step = max(1, (_EXACT_FLOAT - 1) // max(1, (p - 1) ** 2))
    if (p - 1) ** 2 >= _EXACT_FLOAT:
        return np.mod(A.astype(object) @ B.astype(object), p).astype(np.int64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, k, step):
        Af = A[:, s : s + step].astype(np.float64)
        Bf = B[s : s + step].astype(np.float64)
        out += np.mod((Af @ Bf).astype(np.int64), p)
        out %= p
    return out


def _panel_pivots(P: np.ndarray, p: int) -> list[tuple[int, int]]:
    """(row, column) pivot pairs of a row echelon form of the panel P."""
    P = P.copy()
    m, b = P.shape
    rows = np.arange(m)
    piv = []
    r = 0
    for c in range(b):
        if r == m:
            break
        nz = np.flatnonzero(P[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            P[[r, k]] = P[[k, r]]
            rows[[r, k]] = rows[[k, r]]
        P[r] = P[r] * pow(int(P[r, c]), -1, p) % p
        below = r + 1 + np.flatnonzero(P[r + 1 :, c])
        if below.size:
            P[below] = (P[below] - np.outer(P[below, c], P[r])) % p
        piv.append((int(rows[r]), c))
        r += 1
    return piv


def _inverse_small(M: np.ndarray, p: int) -> np.ndarray:
    k = M.shape[0]
    W = np.concatenate([M % p, np.eye(k, dtype=np.int64)], axis=1)
    for c in range(k):
        nz = c + np.flatnonzero(W[c:, c])
        if nz.size == 0:
            raise ZeroDivisionError("singular matrix")
        if nz[0] != c:
            W[[c, nz[0]]] = W[[nz[0], c]]
        W[c] = W[c] * pow(int(W[c, c]), -1, p) % p
        col = W[:, c].copy()
        col[c] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            W[nzr] = (W[nzr] - np.outer(col[nzr], W[c])) % p
    return W[:, k:]


def rref_mod(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.mod(np.asarray(M, dtype=np.int64), p)
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c0 in range(0, n, _PANEL):
        if r == m:
            break
        c1 = min(c0 + _PANEL, n)
        piv = _panel_pivots(A[r:, c0:c1], p)
        if not piv:
            continue
        S = np.array([r + lr for lr, _ in piv])
        pc = np.array([c0 + c for _, c in piv])
        N = matmul_mod(_inverse_small(A[np.ix_(S, pc)], p), A[S, c0:], p)
        mask = np.ones(m, dtype=bool)
        mask[S] = False
        others = np.flatnonzero(mask)
        if others.size:
            upd = matmul_mod(A[np.ix_(others, pc)], N, p)
            A[others, c0:] = (A[others, c0:] - upd) % p
        head = A[:r]
        tail = A[others[others >= r]]
        Nfull = np.zeros((len(S), n), dtype=np.int64)
        Nfull[:, c0:] = N
        A = np.concatenate([head, Nfull, tail])
        r += len(S)
        pivots.extend(int(c) for c in pc)
    return A[:r], pivots


# -- Q kernels -----------------------------------------------------------------


def _to_dm(M: np.ndarray) -> DomainMatrix:
    m, n = M.shape
    rows = {}
    for i in range(m):
        row = {}
        for j in range(n):
            x = M[i, j]
            if x:
                if isinstance(x, Fraction):
                    row[j] = _SQQ(x.numerator, x.denominator)
                else:
                    row[j] = _SQQ(int(x))
        if row:
            rows[i] = row
    return DomainMatrix(rows, (m, n), _SQQ)


def _from_dm(D: DomainMatrix) -> np.ndarray:
    m, n = D.shape
    out = np.empty((m, n), dtype=object)
    out.fill(0)
    for i, row in D.to_sdm().items():
        for j, x in row.items():
            num, den = int(x.numerator), int(x.denominator)
            out[i, j] = num if den == 1 else Fraction(num, den)
    return out


def rref_q(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return M[:0], []
    R, piv = _to_dm(M).rref()
    return _from_dm(R)[: len(piv)], list(piv)


# -- field-generic API ---------------------------------------------------------


def matmul(A: np.ndarray, B: np.ndarray, F: Field) -> np.ndarray:
    if F.p is not None:
        return matmul_mod(A, B, F.p)
    if A.shape[1] == 0:
        return F.zeros((A.shape[0], B.shape[1]))
    return _from_dm(_to_dm(A) * _to_dm(B))


def matpow(A: np.ndarray, k: int, F: Field) -> np.ndarray:
    R = F.eye(A.shape[0])
    P = A
    while k:
        if k & 1:
            R = matmul(R, P, F)
        k >>= 1
        if k:
            P = matmul(P, P, F)
    return R


def rref(M: np.ndarray, F: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form without zero rows, and its pivot columns."""
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError("rref expects a matrix")
    if M.shape[0] == 0:
        return F.zeros((0, M.shape[1])), []
    if F.p is not None:
        return rref_mod(M, F.p)
    return rref_q(M)


def rank(M: np.ndarray, F: Field) -> int:
    return len(rref(M, F)[1])


def kernel_from_rref(R: np.ndarray, pivots: Sequence[int], n: int, F: Field) -> np.ndarray:
    free = [j for j in range(n) if j not in set(pivots)]
    K = F.zeros((len(free), n))
    for t, j in enumerate(free):
        K[t, j] = 1
        for i, pc in enumerate(pivots):
            if R[i, j]:
                K[t, pc] = -R[i, j]
    return F.reduce(K)


def kernel(M: np.ndarray, F: Field) -> np.ndarray:
    """Rows spanning {x : M x = 0}, in canonical reduced echelon form."""
    M = np.asarray(M)
    n = M.shape[1]
    R, piv = rref(M, F)
    K = kernel_from_rref(R, piv, n, F)
    return rref(K, F)[0] if len(K) else K


def solve(M: np.ndarray, b, F: Field) -> tuple[np.ndarray, np.ndarray] | None:
    """One solution of M x = b with the kernel of M, or None if inconsistent."""
    M = np.asarray(M)
    m, n = M.shape
    bb = F.array(b).reshape(m, 1)
    aug = np.concatenate([M.astype(bb.dtype) if F.p is not None else M.astype(object), bb], axis=1)
    R, piv = rref(aug, F)
    if piv and piv[-1] == n:
        return None
    x = F.zeros(n)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n]
    K = kernel_from_rref(R[:, :n], piv, n, F)
    return x, K


def solve_many(M: np.ndarray, B: np.ndarray, F: Field) -> np.ndarray | None:
    """A matrix X with M X = B, or None if some column is inconsistent."""
    M = np.asarray(M)
    m, n = M.shape
    B = np.asarray(B).reshape(m, -1)
    aug = np.concatenate([M, B], axis=1)
    R, piv = rref(aug, F)
    if any(pc >= n for pc in piv):
        return None
    X = F.zeros((n, B.shape[1]))
    for i, pc in enumerate(piv):
        X[pc] = R[i, n:]
    return X


class Subspace:
    """Row space of a matrix, stored as its reduced echelon basis.

    Equal subspaces have identical ``basis`` arrays, so ``==`` is exact
    equality of subspaces.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, vectors=None, *, _rref=None):
        self.field = field
        self.ambient = ambient
        if _rref is not None:
            self.basis, self.pivots = _rref
            return
        if vectors is None or len(vectors) == 0:
            self.basis, self.pivots = field.zeros((0, ambient)), []
            return
        V = field.array(vectors).reshape(-1, ambient)
        self.basis, self.pivots = rref(V, field)

    @classmethod
    def whole(cls, field: Field, n: int) -> Subspace:
        return cls(field, n, _rref=(field.eye(n), list(range(n))))

    @classmethod
    def zero(cls, field: Field, n: int) -> Subspace:
        return cls(field, n)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.pivots == other.pivots
            and bool(np.all(self.basis == other.basis))
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field})"

    def coordinates(self, v) -> np.ndarray | None:
        """Coordinates of v in ``basis`` or None if v is not in the subspace."""
        F = self.field
        v = F.array(v)
        c = v[self.pivots] if self.pivots else F.zeros(0)
        if self.dim:
            resid = F.reduce(v - matmul(c.reshape(1, -1), self.basis, F)[0])
        else:
            resid = v
        return c if not np.any(resid != 0) else None

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_all(self, vectors) -> bool:
        vectors = np.asarray(vectors)
        if vectors.size == 0:
            return True
        return self.add(vectors).dim == self.dim

    def add(self, vectors) -> Subspace:
        vectors = self.field.array(vectors).reshape(-1, self.ambient)
        if len(vectors) == 0:
            return self
        return Subspace(self.field, self.ambient, np.concatenate([self.basis, vectors]))

    def __add__(self, other: Subspace) -> Subspace:
        return self.add(other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains_all(self.basis)

    def intersect(self, other: Subspace) -> Subspace:
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.ambient)
        # x @ self.basis == y @ other.basis
        M = np.concatenate([self.basis, F.reduce(-other.basis) if F.p else -other.basis]).T
        K = kernel(M, F)
        if len(K) == 0:
            return Subspace.zero(F, self.ambient)
        return Subspace(F, self.ambient, matmul(K[:, : self.dim], self.basis, F))

    def complement_basis(self) -> np.ndarray:
        """Standard basis vectors spanning a complement (non-pivot coordinates)."""
        F = self.field
        free = [j for j in range(self.ambient) if j not in set(self.pivots)]
        E = F.zeros((len(free), self.ambient))
        for t, j in enumerate(free):
            E[t, j] = 1
        return E


def span(F: Field, ambient: int, vectors: Iterable) -> Subspace:
    vs = list(vectors)
    return Subspace(F, ambient, np.array(vs) if vs else None)


class EchelonBuilder:
    """Reduced echelon basis grown block by block, for spinning algorithms.

    Rows are kept in insertion order; every row is 1 on its own pivot and 0 on
    all other pivots, so coordinates of a vector in the span are just its
    entries on the pivot columns.
    """

    def __init__(self, F: Field, ambient: int):
        self.field = F
        self.ambient = ambient
        self._rows = F.zeros((0, ambient))
        self._piv: list[int] = []

    @property
    def dim(self) -> int:
        return len(self._piv)

    def coordinates(self, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Coefficients of the rows of V over :meth:`rows`, and the residue."""
        F = self.field
        C = np.ascontiguousarray(V[:, self._piv])
        if self._piv and np.any(C != 0):
            V = F.reduce(V - matmul(C, self._rows, F))
        return C, V

    def reduce(self, V: np.ndarray) -> np.ndarray:
        return self.coordinates(V)[1]

    def rows(self) -> np.ndarray:
        return self._rows

    def absorb(self, V: np.ndarray) -> np.ndarray:
        """Add the rows of V; returns the new echelon rows (empty if nothing new)."""
        F = self.field
        res = self.reduce(F.array(V).reshape(-1, self.ambient))
        res = res[np.any(res != 0, axis=1)]
        if len(res) == 0:
            return res
        new, npiv = rref(res, F)
        if self._piv:
            c = np.ascontiguousarray(self._rows[:, npiv])
            if np.any(c != 0):
                self._rows = F.reduce(self._rows - matmul(c, new, F))
        self._rows = np.concatenate([self._rows, new])
        self._piv = self._piv + list(npiv)
        return new

    def subspace(self) -> Subspace:
        F = self.field
        if not self._piv:
            return Subspace(F, self.ambient)
        order = np.argsort(self._piv, kind="stable")
        return Subspace(F, self.ambient, _rref=(self._rows[order], [self._piv[k] for k in order]))
