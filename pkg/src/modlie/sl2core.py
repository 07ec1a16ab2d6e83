"""sl2-triples: verification, extension of a nilpotent e, and the delta maps.

Elements are field vectors in a :class:`~modlie.chevalley.LieAlgebra`.  A
triple (e, h, f) satisfies [h,e] = 2e, [h,f] = -2f and [e,f] = h.

Extension of e always starts from the affine set

    A(e) = {h in im(ad e) : [h, e] = 2e} = {[e, x] : ad(e)^2 x = -2e},

preferring the points of A(e) that lie in the Cartan subalgebra.  When e is a
sum of root vectors this keeps h integral and diagonal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

import numpy as np

from .chevalley import LieAlgebra
from .exactla.jordan import JordanPartition, NotNilpotent, jordan_partition
from .exactla.linalg import Subspace, matmul, rank, solve

SEARCH_LIMIT = 4


class SolveFailed(ArithmeticError):
    pass


class NoTriple(ArithmeticError):
    pass


class SearchSpaceTooLarge(RuntimeError):
    pass


class NilpotencyTooDeep(ValueError):
    pass


@dataclass(frozen=True)
class Sl2Triple:
    e: np.ndarray
    h: np.ndarray
    f: np.ndarray
    verified: bool = False
    source: str = ""
    f_freedom: int = 0  # dimension of the affine family the chosen f came from

    def as_dsl(self, L: LieAlgebra) -> dict[str, str]:
        return {"e": L.format(self.e), "h": L.format(self.h), "f": L.format(self.f)}


@dataclass(frozen=True)
class TripleReport:
    triple: Sl2Triple
    e_partition: JordanPartition
    f_partition: JordanPartition
    h_toral: bool
    e_p_power_zero: bool


def _sub(L: LieAlgebra, x, y) -> np.ndarray:
    return L.field.reduce(np.asarray(x) - np.asarray(y))


def _scale(L: LieAlgebra, c, x) -> np.ndarray:
    return L.field.reduce(L.field.scalar(c) * np.asarray(x))


def verify_triple(L: LieAlgebra, e, h, f) -> bool:
    e, h, f = L.element(e), L.element(h), L.element(f)
    return (
        L.is_zero(_sub(L, L.bracket(h, e), _scale(L, 2, e)))
        and L.is_zero(_sub(L, L.bracket(h, f), _scale(L, -2, f)))
        and L.is_zero(_sub(L, L.bracket(e, f), h))
    )


def _require_nilpotent(L: LieAlgebra, e) -> np.ndarray:
    A = L.ad(e)
    P = A
    for _ in range(L.dim):
        if not np.any(P != 0):
            return A
        P = matmul(P, A, L.field)
    if not np.any(P != 0):
        return A
    raise NotNilpotent("ad(e) is not nilpotent")


def _cartan_rows(L: LieAlgebra) -> np.ndarray:
    F = L.field
    M = F.zeros((L.dim, L.rs.rank))
    for i in range(L.rs.rank):
        M[L.nroots + i, i] = 1
    return M


def h_candidates(L: LieAlgebra, e) -> tuple[np.ndarray, np.ndarray, bool] | None:
    """The affine set A(e) as (point, direction rows, in_cartan).

    If A(e) meets the Cartan subalgebra the intersection is returned with
    ``in_cartan`` set; otherwise the whole of A(e).  None when A(e) is empty.
    """
    F = L.field
    e = L.element(e)
    A = L.ad(e)
    A2 = matmul(A, A, F)
    sol = solve(A2, _scale(L, -2, e), F)
    if sol is None:
        return None
    x0, K = sol
    h0 = matmul(A, x0.reshape(-1, 1), F)[:, 0]
    V = matmul(K, np.ascontiguousarray(A.T), F) if len(K) else F.zeros((0, L.dim))
    Vs = Subspace(F, L.dim, V if len(V) else None)
    # intersect h0 + Vs with the Cartan: h0 + V^T c = C t
    negC = F.reduce(-_cartan_rows(L))
    M = np.concatenate([Vs.basis.T, negC], axis=1) if Vs.dim else negC
    cs = solve(M, F.reduce(-h0), F)
    if cs is not None:
        y, Ky = cs
        d = Vs.dim
        point = F.reduce(h0 + matmul(y[:d].reshape(1, -1), Vs.basis, F)[0]) if d else h0
        dirs = [matmul(k[:d].reshape(1, -1), Vs.basis, F)[0] for k in Ky] if d else []
        dirs = Subspace(F, L.dim, np.array(dirs) if dirs else None).basis
        return point, dirs, True
    return h0, Vs.basis, False


def _solve_f(L: LieAlgebra, e, h) -> tuple[np.ndarray, int] | None:
    """One f with [e,f] = h and [h,f] = -2f, and the dimension of all such f."""
    F = L.field
    Ae, Ah = L.ad(e), L.ad(h)
    M = np.concatenate([Ae, F.reduce(Ah + 2 * F.eye(L.dim))])
    rhs = np.concatenate([L.element(h), F.zeros(L.dim)])
    sol = solve(M, rhs, F)
    if sol is None:
        return None
    f, K = sol
    return f, len(K)


def jm_extend_char0(L: LieAlgebra, e) -> Sl2Triple:
    """Jacobson-Morozov over Q: an sl2-triple with the given nilpotent e."""
    if L.field.p is not None:
        raise ValueError("jm_extend_char0 works over the rationals")
    e = L.element(e)
    _require_nilpotent(L, e)
    if L.is_zero(e):
        z = L.field.zeros(L.dim)
        return Sl2Triple(z, z, z, verified=True, source="zero")
    cand = h_candidates(L, e)
    if cand is None:
        raise SolveFailed("ad(e)^2 x = -2e has no rational solution")
    h = cand[0]
    sol = _solve_f(L, e, h)
    if sol is None:
        raise SolveFailed("no f for the chosen h")
    f, free = sol
    ok = verify_triple(L, e, h, f)
    if not ok:
        raise SolveFailed("constructed triple fails the relations")
    return Sl2Triple(e, h, f, verified=True, source="char0", f_freedom=free)


def extend_mod_p(L: LieAlgebra, e, limit: int = SEARCH_LIMIT) -> list[Sl2Triple]:
    """All toral h in the search set A(e) with an f completing the triple.

    The search set is A(e) cut down to the Cartan subalgebra when possible.
    It is enumerated exhaustively when it has dimension at most ``limit``.
    """
    F = L.field
    if F.p is None:
        raise ValueError("extend_mod_p needs a prime field")
    e = L.element(e)
    _require_nilpotent(L, e)
    cand = h_candidates(L, e)
    if cand is None:
        raise NoTriple("e is not in the image of (ad e)^2")
    h0, dirs, in_cartan = cand
    d = len(dirs)
    if d > limit:
        raise SearchSpaceTooLarge(f"affine set of dimension {d} exceeds the limit {limit}")
    out = []
    for coeffs in itertools.product(range(F.p), repeat=d):
        h = h0
        if d:
            h = F.reduce(h0 + matmul(np.array([coeffs], dtype=np.int64), dirs, F)[0])
        if not in_cartan and not L.is_toral(h):
            continue
        sol = _solve_f(L, e, h)
        if sol is None:
            continue
        f, free = sol
        out.append(
            Sl2Triple(e, h, f, verified=verify_triple(L, e, h, f), source="cartan" if in_cartan else "search", f_freedom=free)
        )
    if not out:
        raise NoTriple("no toral h admits an f")
    return out


def triple_report(L: LieAlgebra, t: Sl2Triple) -> TripleReport:
    F = L.field
    ep = jordan_partition(L.ad(t.e), F)
    fp = jordan_partition(L.ad(t.f), F)
    if F.p is None:
        return TripleReport(t, ep, fp, h_toral=False, e_p_power_zero=False)
    return TripleReport(t, ep, fp, h_toral=L.is_toral(t.h), e_p_power_zero=L.is_zero(L.p_power(t.e)))


# -- delta maps and exponentials ------------------------------------------------


def delta(L: LieAlgebra, x) -> np.ndarray:
    """The matrix 1 + ad x + (1/2)(ad x)^2."""
    F = L.field
    if F.characteristic == 2:
        raise ValueError("delta needs characteristic other than 2")
    A = L.ad(x)
    A2 = matmul(A, A, F)
    return F.reduce(F.eye(L.dim) + A + A2 * F.inv(2))


def _graded_part(L: LieAlgebra, v: np.ndarray, weights: np.ndarray, m: int) -> np.ndarray:
    w = v.copy()
    w[weights != m] = 0
    return w


def delta_map(L: LieAlgebra, fbar, src: Subspace, dst: Subspace, weights=None, m: int | None = None) -> np.ndarray:
    """Matrix (dst coords x src basis) of x -> projection of delta_x(fbar) - fbar.

    With ``weights`` and ``m`` the projection keeps the weight-m component;
    without them the difference itself must lie in ``dst``.
    """
    F = L.field
    fbar = L.element(fbar)
    cols = []
    for x in src.basis:
        diff = _sub(L, matmul(delta(L, x), fbar.reshape(-1, 1), F)[:, 0], fbar)
        if weights is not None:
            diff = _graded_part(L, diff, np.asarray(weights), m)
        c = dst.coordinates(diff)
        if c is None:
            raise ValueError("delta image is not in the target subspace")
        cols.append(c)
    if not cols:
        return F.zeros((dst.dim, 0))
    return F.array(np.array(cols, dtype=object)).T


def nilpotency_index(L: LieAlgebra, v) -> int:
    """Smallest m with (ad v)^m = 0."""
    A = L.ad(v)
    P = L.field.eye(L.dim)
    for m in range(L.dim + 1):
        if not np.any(P != 0):
            return m
        P = matmul(P, A, L.field)
    raise NotNilpotent("ad(v) is not nilpotent")


def truncated_exp(L: LieAlgebra, v) -> np.ndarray:
    """Matrix of sum_{k<m} (ad v)^k / k!, valid when 2(m-1) < p."""
    F = L.field
    m = nilpotency_index(L, v)
    if F.p is not None and 2 * (m - 1) >= F.p:
        raise NilpotencyTooDeep(f"(ad v) has nilpotency index {m}; need 2(m-1) < {F.p}")
    A = L.ad(v)
    out = F.eye(L.dim)
    P = F.eye(L.dim)
    for k in range(1, m):
        P = matmul(P, A, F)
        out = F.reduce(out + P * F.inv(factorial(k)))
    return out


def truncated_exp_conjugate(L: LieAlgebra, v, target) -> np.ndarray:
    E = truncated_exp(L, v)
    return matmul(E, L.element(target).reshape(-1, 1), L.field)[:, 0]


def orbit_dimension(L: LieAlgebra, x) -> int:
    return rank(L.ad(x), L.field)


def partition_of(L: LieAlgebra, x) -> JordanPartition:
    return jordan_partition(L.ad(x), L.field)


def solvable_square(L: LieAlgebra, e) -> bool:
    """Whether e lies in the image of (ad e)^2."""
    A = L.ad(e)
    return solve(matmul(A, A, L.field), L.element(e), L.field) is not None


__all__ = [
    "NilpotencyTooDeep",
    "NoTriple",
    "NotNilpotent",
    "SearchSpaceTooLarge",
    "SolveFailed",
    "Sl2Triple",
    "TripleReport",
    "delta",
    "delta_map",
    "extend_mod_p",
    "h_candidates",
    "jm_extend_char0",
    "nilpotency_index",
    "orbit_dimension",
    "partition_of",
    "solvable_square",
    "triple_report",
    "truncated_exp",
    "truncated_exp_conjugate",
    "verify_triple",
]
