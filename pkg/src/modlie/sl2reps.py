"""Explicit sl2-modules over F_p.

Every module is given by the matrices of e, f and h; the acting basis order
(e, f, h) matches the Chevalley basis of A1, so ``as_action`` can hand the
module to :mod:`modlie.exactla.modules` and :mod:`modlie.cohomology` together
with the A1 structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chevalley import structure_tensor
from .exactla.fields import GF, Field
from .exactla.jordan import JordanPartition, jordan_partition
from .exactla.linalg import matmul
from .exactla.modules import ModuleAction

SL2_STRUCTURE = structure_tensor("A1")


class ModuleRelationError(ValueError):
    pass


@dataclass(frozen=True)
class Sl2Module:
    p: int
    e: np.ndarray
    f: np.ndarray
    h: np.ndarray

    def __post_init__(self) -> None:
        if not self.relations_hold():
            raise ModuleRelationError("matrices do not satisfy the sl2 relations")

    @property
    def field(self) -> Field:
        return GF(self.p)

    @property
    def dim(self) -> int:
        return self.e.shape[0]

    def relations_hold(self) -> bool:
        F, p = self.field, self.p

        def br(a, b):
            return (matmul(a, b, F) - matmul(b, a, F)) % p

        return (
            not np.any((br(self.h, self.e) - 2 * self.e) % p)
            and not np.any((br(self.h, self.f) + 2 * self.f) % p)
            and not np.any((br(self.e, self.f) - self.h) % p)
        )

    def as_action(self) -> ModuleAction:
        return ModuleAction(self.field, [self.e, self.f, self.h], SL2_STRUCTURE)

    def partitions(self) -> tuple[JordanPartition, JordanPartition]:
        return jordan_partition(self.e, self.field), jordan_partition(self.f, self.field)


def _module(p: int, e, f, h) -> Sl2Module:
    return Sl2Module(p, np.asarray(e, dtype=np.int64) % p, np.asarray(f, dtype=np.int64) % p, np.asarray(h, dtype=np.int64) % p)


def simple_L(p: int, m: int) -> Sl2Module:
    """L(m): basis v_0..v_m of weights m, m-2, ..., -m."""
    if not 0 <= m <= p - 1:
        raise ValueError(f"need 0 <= m <= p-1, got m={m}")
    n = m + 1
    e = np.zeros((n, n), dtype=np.int64)
    f = np.zeros((n, n), dtype=np.int64)
    h = np.diag([m - 2 * i for i in range(n)])
    for i in range(n - 1):
        f[i + 1, i] = i + 1  # f v_i = (i+1) v_{i+1}
        e[i, i + 1] = m - i  # e v_{i+1} = (m-i) v_i
    return _module(p, e, f, h)


def dual(M: Sl2Module) -> Sl2Module:
    return _module(M.p, -M.e.T, -M.f.T, -M.h.T)


def tensor(M: Sl2Module, N: Sl2Module) -> Sl2Module:
    if M.p != N.p:
        raise ValueError("modules over different primes")
    Im, In = np.eye(M.dim, dtype=np.int64), np.eye(N.dim, dtype=np.int64)

    def t(a, b):
        return np.kron(a, In) + np.kron(Im, b)

    return _module(M.p, t(M.e, N.e), t(M.f, N.f), t(M.h, N.h))


def direct_sum(*mods: Sl2Module) -> Sl2Module:
    p = mods[0].p
    n = sum(m.dim for m in mods)
    mats = []
    for attr in ("e", "f", "h"):
        A = np.zeros((n, n), dtype=np.int64)
        o = 0
        for m in mods:
            A[o : o + m.dim, o : o + m.dim] = getattr(m, attr)
            o += m.dim
        mats.append(A)
    return _module(p, *mats)


def uniserial_W(p: int, i: int) -> Sl2Module:
    """The self-dual uniserial module L(i) | L(p-2-i) | L(i) of dimension p+i+1.

    Basis u_s = e^s w (s = 0..p+i) for a generator w of weight -i, with
    f u_s = s(i-s+1) u_{s-1}; the coefficient is forced by [e,f] = h.
    """
    if not 0 <= i <= p - 2:
        raise ValueError(f"need 0 <= i <= p-2, got i={i}")
    r = p + i + 1
    e = np.zeros((r, r), dtype=np.int64)
    f = np.zeros((r, r), dtype=np.int64)
    h = np.diag([-i + 2 * s for s in range(r)])
    for s in range(r - 1):
        e[s + 1, s] = 1
    for s in range(1, r):
        f[s - 1, s] = s * (i - s + 1)
    return _module(p, e, f, h)


def indecomposable_kL(p: int) -> Sl2Module:
    """The p-dimensional module k | L(p-2) on the natural module of gl_p.

    e is the full superdiagonal Jordan block and f the subdiagonal with
    entries lambda_i = -i(i+1); lambda_{p-1} vanishes, so f has blocks (p-1, 1).
    """
    if p < 3:
        raise ValueError("need p >= 3")
    e = np.zeros((p, p), dtype=np.int64)
    f = np.zeros((p, p), dtype=np.int64)
    for i in range(1, p):
        e[i - 1, i] = 1  # e(b_{i+1}) = b_i
        f[i, i - 1] = -i * (i + 1)  # f(b_i) = lambda_i b_{i+1}
    h = (matmul(e % p, f % p, GF(p)) - matmul(f % p, e % p, GF(p))) % p
    return _module(p, e, f, h)


def a_family(p: int, lam: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """gl_p matrices e, f + lam*f0 and the expected h + lam*I."""
    e = np.zeros((p, p), dtype=np.int64)
    f = np.zeros((p, p), dtype=np.int64)
    f0 = np.zeros((p, p), dtype=np.int64)
    for i in range(1, p):
        e[i - 1, i] = 1  # e_{alpha_i} = E_{i,i+1}
        f[i, i - 1] = -(i * i)  # e_{-alpha_i} = E_{i+1,i}
        f0[i, i - 1] = i
    h = np.diag([p - 1 - 2 * k for k in range(p)])
    return e % p, (f + lam * f0) % p, (h + lam * np.eye(p, dtype=np.int64)) % p


def a_family_bracket_check(p: int, lam: int) -> bool:
    """[e, f + lam f0] = h + lam I, and the two h-eigen relations, in gl_p."""
    F = GF(p)
    e, f, h = a_family(p, lam)

    def br(a, b):
        return (matmul(a, b, F) - matmul(b, a, F)) % p

    return (
        not np.any((br(e, f) - h) % p)
        and not np.any((br(h, e) - 2 * e) % p)
        and not np.any((br(h, f) + 2 * f) % p)
    )


def ext1(p: int, a: int, b: int, restricted: bool = True) -> int:
    """dim H^1(sl2, L(a)* (x) L(b)).

    By default the cocycles are also required to respect the [p]-map, which
    is the restricted cohomology computing Ext over the restricted enveloping
    algebra; ``restricted=False`` gives ordinary Lie algebra cohomology.
    """
    from .cohomology import SL2_P_MAP, h1

    M = tensor(dual(simple_L(p, a)), simple_L(p, b))
    return h1(SL2_STRUCTURE, M.as_action(), p_map=SL2_P_MAP if restricted else None).h1_dim
