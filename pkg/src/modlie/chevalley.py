"""Chevalley-basis Lie algebras over F_p and Q.

Basis order: e_alpha for the positive roots, e_alpha for the negative roots
(both in root-system order), then h_1..h_rank where h_i = h_{alpha_i}.

Conventions::

    [e_alpha, e_-alpha] = h_alpha      (the coroot, in the h_i basis)
    [h_i, e_alpha]      = <alpha, alpha_i^vee> e_alpha
    [e_alpha, e_beta]   = N_{alpha,beta} e_{alpha+beta},  N = +-(r+1)

Signs come from the extraspecial-pair algorithm: N = +(r+1) on every
extraspecial pair of positive roots and N_{-alpha,-beta} = -N_{alpha,beta}.
Elements are plain field vectors of length ``dim``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .exactla.fields import QQ, Field
from .exactla.linalg import Subspace, kernel, matmul, matpow, rank, rref
from .exactla.modules import spin
from .rootsys import Root, RootSystem, root_system


class NontrivialCenter(ArithmeticError):
    """The adjoint representation is not faithful, so ad-solving is ambiguous."""


class NoSolution(ArithmeticError):
    pass


class NotGradingStable(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# -- structure constants ---------------------------------------------------------


def structure_constants(rs: RootSystem) -> dict[tuple[Root, Root], int]:
    """N_{alpha,beta} for every pair of roots whose sum is a root."""
    roots = rs.roots
    order = {r: k for k, r in enumerate(rs.positive_roots)}
    pos = set(rs.positive_roots)
    inner = rs.inner

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(a):
        return tuple(-x for x in a)

    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    def r_of(a, b):
        r, c = 0, sub(b, a)
        while rs.is_root(c):
            r += 1
            c = sub(c, a)
        return r

    # extraspecial pair for each non-simple positive root
    extra: dict[Root, tuple[Root, Root]] = {}
    for a in rs.positive_roots:
        for b in rs.positive_roots:
            if order[a] < order[b]:
                s = add(a, b)
                if s in pos and s not in extra:
                    extra[s] = (a, b)
    # (the outer loop runs over alpha in increasing order, so the first hit is minimal)

    memo: dict[tuple[Root, Root], Fraction] = {}

    def N(a: Root, b: Root) -> Fraction:
        key = (a, b)
        if key in memo:
            return memo[key]
        s = add(a, b)
        if not rs.is_root(s):
            val = Fraction(0)
        elif a in pos and b in pos:
            g, d = extra[s]
            if (a, b) == (g, d):
                val = Fraction(r_of(a, b) + 1)
            elif (b, a) == (g, d):
                val = -N(b, a)
            else:
                # four roots a, b, -g, -d summing to zero
                ng, nd = neg(g), neg(d)
                t = Fraction(0)
                x = sub(b, g)
                if rs.is_root(x):
                    t -= N(b, ng) * N(a, nd) / inner(x, x)
                y = sub(a, g)
                if rs.is_root(y):
                    t -= N(ng, a) * N(b, nd) / inner(y, y)
                val = t * inner(s, s) / N(ng, nd)
        elif a not in pos and b not in pos:
            val = -N(neg(a), neg(b))
        elif a in pos:
            # triple (a, b, -s) sums to zero
            if s in pos:
                val = -Fraction(inner(s, s), inner(a, a)) * N(neg(b), s)
            else:
                val = Fraction(inner(s, s), inner(b, b)) * N(neg(s), a)
        else:
            val = -N(b, a)
        memo[key] = val
        return val

    out = {}
    for a in roots:
        for b in roots:
            if rs.is_root(add(a, b)):
                v = N(a, b)
                if v.denominator != 1:
                    raise AssertionError(f"non-integral structure constant N{a,b} = {v}")
                out[(a, b)] = int(v)
    return out


def coroot(rs: RootSystem, alpha: Root) -> tuple[int, ...]:
    """h_alpha in the basis h_1..h_rank."""
    aa = rs.inner(alpha, alpha)
    return tuple(c * rs.gram[i][i] // aa for i, c in enumerate(alpha))


@lru_cache(maxsize=None)
def structure_tensor(name: str) -> np.ndarray:
    """Dense int8 tensor T with [b_i, b_j] = sum_k T[i, j, k] b_k."""
    rs = root_system(name)
    roots = rs.roots
    nr, r = len(roots), rs.rank
    n = nr + r
    T = np.zeros((n, n, n), dtype=np.int8)
    consts = structure_constants(rs)
    for (a, b), v in consts.items():
        T[rs.index(a), rs.index(b), rs.index(tuple(x + y for x, y in zip(a, b)))] = v
    npos = len(rs.positive_roots)
    for k, a in enumerate(rs.positive_roots):
        hc = coroot(rs, a)
        for i, c in enumerate(hc):
            T[k, npos + k, nr + i] = c
            T[npos + k, k, nr + i] = -c
    for k, a in enumerate(roots):
        for i in range(r):
            w = rs.pairing(a, i + 1)
            T[nr + i, k, k] = w
            T[k, nr + i, k] = -w
    T.setflags(write=False)
    return T


# -- gradings ----------------------------------------------------------------------


@dataclass(frozen=True)
class Grading:
    weights: tuple[int, ...]

    def component(self, m: int) -> list[int]:
        return [k for k, w in enumerate(self.weights) if w == m]


# -- the algebra -------------------------------------------------------------------


class LieAlgebra:
    def __init__(self, rs: RootSystem | str, field: Field = QQ):
        self.rs = root_system(rs) if isinstance(rs, str) else rs
        self.field = field
        self.T = structure_tensor(self.rs.name)
        self.dim = self.T.shape[0]
        self.npos = len(self.rs.positive_roots)
        self.nroots = 2 * self.npos

    def __repr__(self) -> str:
        return f"LieAlgebra({self.rs.name}, {self.field})"

    @cached_property
    def _T2(self) -> np.ndarray:
        return self.T.reshape(self.dim, self.dim * self.dim).astype(np.float64)

    # basis helpers
    def e(self, root: Iterable[int]) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[self.rs.index(root)] = 1
        return v

    def h(self, i: int) -> np.ndarray:
        """h_{alpha_i} for the 1-based simple index i."""
        v = self.field.zeros(self.dim)
        v[self.nroots + i - 1] = 1
        return v

    def basis_vector(self, k: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[k] = 1
        return v

    def basis_label(self, k: int) -> str:
        if k < self.nroots:
            return "e[" + ",".join(str(c) for c in self.rs.roots[k]) + "]"
        return f"h[{k - self.nroots + 1}]"

    @property
    def cartan_indices(self) -> range:
        return range(self.nroots, self.dim)

    def element(self, data) -> np.ndarray:
        v = self.field.array(data)
        if v.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}, got shape {v.shape}")
        return v

    # arithmetic
    def _structure_product(self, x: np.ndarray) -> np.ndarray:
        """M with M[j, k] = coefficient of b_k in [x, b_j]."""
        n, F = self.dim, self.field
        if F.p is not None:
            M = x.astype(np.float64) @ self._T2
            return np.mod(np.rint(M).astype(np.int64), F.p).reshape(n, n)
        den = 1
        for c in x:
            if isinstance(c, Fraction):
                den = den * c.denominator // np.gcd(den, c.denominator)
        xi = np.array([int(c * den) for c in x], dtype=object)
        big = max((abs(c) for c in xi), default=0)
        if big * 4 * n < 2**52:
            M = np.rint(xi.astype(np.float64) @ self._T2).astype(np.int64).astype(object)
        else:
            M = np.zeros(n * n, dtype=object)
            for i in np.flatnonzero(xi):
                M = M + xi[i] * self.T[i].reshape(-1).astype(object)
        M = M.reshape(n, n)
        if den != 1:
            M = np.vectorize(lambda t: Fraction(t, den) if t % den else t // den, otypes=[object])(M)
        return M

    def ad(self, x) -> np.ndarray:
        """Matrix of ad(x); column j is [x, b_j]."""
        x = self.element(x)
        return np.ascontiguousarray(self._structure_product(x).T)

    def bracket(self, x, y) -> np.ndarray:
        x, y = self.element(x), self.element(y)
        M = self._structure_product(x)
        return matmul(y.reshape(1, -1), M, self.field)[0]

    def ad_power(self, x, k: int) -> np.ndarray:
        return matpow(self.ad(x), k, self.field)

    def is_zero(self, x) -> bool:
        return not np.any(np.asarray(x) != 0)

    # [p]-map
    @cached_property
    def _generator_rows(self) -> np.ndarray:
        """Stack of -ad(z) for the Chevalley generators e_{+-alpha_i}."""
        rs = self.rs
        gens = [rs.index(s) for s in rs.positive_roots[: rs.rank]]
        gens += [self.npos + g for g in gens]
        F = self.field
        blocks = [F.reduce(-self.ad(self.basis_vector(g))) for g in gens]
        return np.concatenate(blocks)

    @cached_property
    def _p_solver(self) -> tuple[np.ndarray, np.ndarray] | None:
        F = self.field
        M = self._generator_rows
        _, rows = rref(M.T, F)
        if len(rows) < self.dim:
            return None
        S = np.array(rows)
        inv = _inverse(M[S], F)
        return S, inv

    def center_dim(self) -> int:
        return self.dim - rank(self._generator_rows, self.field)

    def p_power(self, x) -> np.ndarray:
        """x^[p], the unique y with ad(y) = ad(x)^p (requires trivial center)."""
        F = self.field
        if F.p is None:
            raise ValueError("the [p]-map needs a prime field")
        solver = self._p_solver
        if solver is None:
            raise NontrivialCenter(f"{self.rs.name} over {F} has a {self.center_dim()}-dimensional center")
        S, inv = solver
        Ap = matpow(self.ad(x), F.p, F)
        rs = self.rs
        gens = [rs.index(s) for s in rs.positive_roots[: rs.rank]]
        gens += [self.npos + g for g in gens]
        rhs = np.concatenate([Ap[:, g] for g in gens])
        y = matmul(inv, rhs[S].reshape(-1, 1), F)[:, 0]
        if np.any(self.ad(y) != Ap):
            raise NoSolution("ad(x)^p is not inner")
        return y

    def is_toral(self, x) -> bool:
        return bool(np.all(self.p_power(x) == self.element(x)))

    def is_nilpotent(self, x) -> bool:
        A = self.ad(x)
        return not np.any(matpow(A, self.dim, self.field) != 0)

    # subspaces
    def centralizer(self, x) -> Subspace:
        return Subspace(self.field, self.dim, _rref=_canonical(kernel(self.ad(x), self.field), self.field))

    def subspace(self, vectors) -> Subspace:
        return Subspace(self.field, self.dim, vectors)

    def tau_grading(self, a: Sequence[int]) -> Grading:
        rs = self.rs
        if len(a) != rs.rank:
            raise ValueError(f"need {rs.rank} weights")
        w = [sum(int(a[j]) * rs.pairing(r, j + 1) for j in range(rs.rank)) for r in rs.roots]
        return Grading(tuple(w + [0] * rs.rank))

    def graded_component(self, sub: Subspace, g: Grading, m: int) -> Subspace:
        """sub intersected with the span of weight-m basis vectors."""
        F = self.field
        if sub.dim == 0:
            return sub
        weights = np.array(g.weights)
        pieces = []
        for w in sorted(set(g.weights)):
            P = sub.basis.copy()
            P[:, weights != w] = 0
            if not sub.contains_all(P):
                raise NotGradingStable("subspace is not a sum of graded pieces")
            if w == m:
                pieces.append(P)
        if not pieces:
            return Subspace.zero(F, self.dim)
        return Subspace(F, self.dim, pieces[0])

    def spin_subalgebra(self, generators: Sequence) -> Subspace:
        gens = [self.element(g) for g in generators]
        if not gens:
            return Subspace.zero(self.field, self.dim)
        return spin([self.ad(g) for g in gens], gens, self.field)

    def derived(self, sub: Subspace) -> Subspace:
        vecs = []
        B = sub.basis
        for i in range(len(B)):
            M = self.ad(B[i])
            vecs.append(matmul(M, B[i + 1 :].T, self.field).T)
        V = np.concatenate(vecs) if vecs else self.field.zeros((0, self.dim))
        return Subspace(self.field, self.dim, V)

    def reachable(self, e) -> bool:
        e = self.element(e)
        if self.is_zero(e):
            return True
        return self.derived(self.centralizer(e)).contains(e)

    def is_subalgebra(self, sub: Subspace) -> bool:
        return self.derived(sub) <= sub

    def is_p_closed(self, sub: Subspace) -> bool:
        return all(sub.contains(self.p_power(b)) for b in sub.basis)

    # element DSL
    def parse(self, text: str) -> np.ndarray:
        return parse_element(self, text)

    def format(self, x) -> str:
        return format_element(self, x)


def _canonical(K: np.ndarray, F: Field):
    if len(K) == 0:
        return K, []
    return rref(K, F)


def _inverse(M: np.ndarray, F: Field) -> np.ndarray:
    n = M.shape[0]
    R, piv = rref(np.concatenate([M, F.eye(n)], axis=1), F)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


@lru_cache(maxsize=None)
def lie_algebra(name: str, p: int | None = None) -> LieAlgebra:
    """Cached algebra for a type string and a prime (None for Q)."""
    return LieAlgebra(name, Field(p))


def build_algebra(rs: RootSystem, field: Field) -> LieAlgebra:
    return LieAlgebra(rs, field)


# -- Jacobi ------------------------------------------------------------------------


def _sparse_table(T: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Padded (index, value) arrays of the nonzero entries of each T[i, j, :]."""
    n = T.shape[0]
    nnz = (T != 0).sum(axis=2)
    K = max(1, int(nnz.max()))
    idx = np.zeros((n, n, K), dtype=np.int64)
    val = np.zeros((n, n, K), dtype=np.int64)
    I, J, Kk = np.nonzero(T)
    slot = np.zeros((n, n), dtype=np.int64)
    for a, b, c in zip(I, J, Kk):
        s = slot[a, b]
        idx[a, b, s] = c
        val[a, b, s] = T[a, b, c]
        slot[a, b] += 1
    return idx, val


def jacobi_residuals(T: np.ndarray, triples: np.ndarray, chunk: int = 20000) -> np.ndarray:
    """Integer Jacobi residual vectors for the given (i, j, k) basis triples.

    Returns an array of shape (len(triples), n); the identity holds exactly
    when every row is zero.
    """
    n = T.shape[0]
    idx, val = _sparse_table(T)
    out = np.zeros((len(triples), n), dtype=np.int64)
    for s in range(0, len(triples), chunk):
        tr = triples[s : s + chunk]
        b = len(tr)
        acc = np.zeros(b * n, dtype=np.int64)
        for a, c, d in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            x, y, z = tr[:, a], tr[:, c], tr[:, d]
            # [b_x, [b_y, b_z]] = sum_l T[y, z, l] [b_x, b_l]
            li, lv = idx[y, z], val[y, z]  # (b, K)
            mi = idx[x[:, None], li]  # (b, K, K)
            mv = val[x[:, None], li] * lv[:, :, None]
            flat = (np.arange(b)[:, None, None] * n + mi).reshape(-1)
            acc += np.bincount(flat, weights=mv.reshape(-1), minlength=b * n).astype(np.int64)
        out[s : s + b] = acc.reshape(b, n)
    return out


def jacobi_failures(L: LieAlgebra, triples: np.ndarray | None = None) -> int:
    """Number of basis triples violating Jacobi in L's field (all triples if None)."""
    n = L.dim
    if triples is None:
        T = L.T.astype(np.float64)
        bad = 0
        T2 = T.reshape(n * n, n)
        Tlm = T.transpose(1, 0, 2).reshape(n, n * n)
        for i in range(n):
            t1 = (T2 @ T[i]).reshape(n, n, n)  # [b_i, [b_j, b_k]]
            t2 = np.einsum("kl,jlm->jkm", T[:, i, :], T)  # [b_j, [b_k, b_i]]
            t3 = (T[i] @ Tlm).reshape(n, n, n)  # [b_k, [b_i, b_j]]
            res = np.rint(t1 + t2 + t3).astype(np.int64)
            if L.field.p is not None:
                res %= L.field.p
            bad += int(np.any(res != 0, axis=2).sum())
        return bad
    res = jacobi_residuals(L.T, triples)
    if L.field.p is not None:
        res %= L.field.p
    return int(np.any(res != 0, axis=1).sum())


# -- element DSL ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<sym>[-+*/\[\],])|(?P<atom>[eh]))")


def parse_element(L: LieAlgebra, text: str) -> np.ndarray:
    """Parse ``element := term (('+'|'-') term)*``, ``term := [coeff '*'] atom``.

    ``coeff`` is an integer or ``a/b``; atoms are ``e[c1,...,cr]`` (root
    coefficients, negative entries for negative roots) and ``h[i]``.  The
    lone string ``0`` is the zero element, matching the printer.
    """
    if text.strip() == "0":
        return L.field.zeros(L.dim)
    toks: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    F = L.field
    out = F.zeros(L.dim)
    k = 0

    def peek():
        return toks[k]

    def take(expect: str | None = None):
        nonlocal k
        t = toks[k]
        if expect is not None and t[1] != expect:
            raise ParseError(f"expected {expect!r}, found {t[1] or 'end of input'!r}", t[2])
        k += 1
        return t

    def integer() -> int:
        sign = 1
        if peek()[1] == "-":
            take()
            sign = -1
        t = take()
        if t[0] != "num":
            raise ParseError(f"expected an integer, found {t[1] or 'end of input'!r}", t[2])
        return sign * int(t[1])

    sign = 1
    if peek()[1] in "+-" and peek()[0] == "sym":
        sign = -1 if take()[1] == "-" else 1
    while True:
        coeff: Fraction | int = 1
        if peek()[0] == "num":
            coeff = int(take()[1])
            if peek()[1] == "/":
                take()
                t = take()
                if t[0] != "num" or int(t[1]) == 0:
                    raise ParseError("bad denominator", t[2])
                coeff = Fraction(coeff, int(t[1]))
            take("*")
        t = take()
        if t[0] != "atom":
            raise ParseError(f"expected 'e[' or 'h[', found {t[1] or 'end of input'!r}", t[2])
        take("[")
        if t[1] == "e":
            cs = [integer()]
            while peek()[1] == ",":
                take()
                cs.append(integer())
            take("]")
            if not L.rs.is_root(cs):
                raise ParseError(f"{tuple(cs)} is not a root of {L.rs.name}", t[2])
            slot = L.rs.index(cs)
        else:
            i = integer()
            take("]")
            if not 1 <= i <= L.rs.rank:
                raise ParseError(f"h index {i} out of range", t[2])
            slot = L.nroots + i - 1
        out[slot] = F.scalar(out[slot] + F.scalar(sign * coeff))
        nxt = peek()
        if nxt[0] == "end":
            break
        if nxt[1] not in "+-" or nxt[0] != "sym":
            raise ParseError(f"expected '+' or '-', found {nxt[1]!r}", nxt[2])
        sign = -1 if take()[1] == "-" else 1
    return out


def format_element(L: LieAlgebra, x) -> str:
    """Deterministic printer; F_p coefficients are printed in [0, p)."""
    x = L.element(x)
    parts = []
    for k in np.flatnonzero(x != 0):
        c = x[k]
        lab = L.basis_label(int(k))
        neg = L.field.p is None and c < 0
        mag = -c if neg else c
        body = lab if mag == 1 else f"{mag}*{lab}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"
