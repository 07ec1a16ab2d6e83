"""The individual checks.

Each check receives its parsed data file and a row selection and returns
``(computed, notes)``: ``computed`` is compared key by key with the expected
values, ``notes`` carries diagnostics that are reported but not compared.
Row-scoped keys start with the algebra type (``E7.q``) or the prime
(``5.h1``).
"""

from __future__ import annotations

import itertools
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from sympy import primerange

from ..chevalley import LieAlgebra, lie_algebra
from ..cohomology import filtered_descent
from ..exactla.fields import GF
from ..exactla.linalg import Subspace, matmul, rank
from ..exactla.modules import ModuleAction, is_completely_reducible, socle
from ..parabolic import standard_parabolic
from ..rootsys import coxeter_number
from ..sl2core import (
    NoTriple,
    delta_map,
    extend_mod_p,
    jm_extend_char0,
    orbit_dimension,
    partition_of,
    solvable_square,
    verify_triple,
)
from ..sl2reps import SL2_STRUCTURE, a_family, a_family_bracket_check, indecomposable_kL, simple_L
from .datafile import CheckSpec
from .signs import count_classes, search_signs


@dataclass(frozen=True)
class Selection:
    types: frozenset[str] | None = None
    p: int | None = None

    def type_ok(self, t: str) -> bool:
        return self.types is None or t in self.types

    def prime_ok(self, p: int) -> bool:
        return self.p is None or p == self.p


Outcome = tuple[dict[str, object], dict[str, object]]


def _algebra(spec: CheckSpec, p: int | None = None) -> LieAlgebra:
    return lie_algebra(spec.types[0], p if p is not None else spec.primes[0])


def _cartan_coeffs(L: LieAlgebra, h: np.ndarray) -> list[int]:
    return [int(h[k]) for k in L.cartan_indices]


def _integral_h(spec: CheckSpec, key: str = "h") -> list[int]:
    """Cartan coefficients of a displayed h, read over the rationals."""
    LQ = lie_algebra(spec.types[0])
    h = LQ.parse(spec.data[key])
    if any(h[: LQ.nroots] != 0):
        raise ValueError("h is not in the Cartan subalgebra")
    return [int(c) for c in _cartan_coeffs(LQ, h)]


# -- C1 -------------------------------------------------------------------------


def check_c1(spec: CheckSpec, sel: Selection) -> Outcome:
    computed: dict[str, object] = {}
    notes: dict[str, object] = {}
    for t in spec.types:
        if not sel.type_ok(t):
            continue
        LQ = lie_algebra(t)
        e, f = LQ.parse(spec.data[f"{t}.e"]), LQ.parse(spec.data[f"{t}.f"])
        computed[f"{t}.q"] = verify_triple(LQ, e, LQ.bracket(e, f), f)
        hc = coxeter_number(LQ.rs)
        primes = [p for p in primerange(3, hc + 1) if sel.prime_ok(p)]
        mod_p, nonzero = True, True
        for p in primes:
            L = lie_algebra(t, p)
            ep, fp = L.parse(spec.data[f"{t}.e"]), L.parse(spec.data[f"{t}.f"])
            mod_p &= verify_triple(L, ep, L.bracket(ep, fp), fp)
            if p < hc:
                nonzero &= not L.is_zero(L.p_power(ep))
        computed[f"{t}.mod_p"] = mod_p
        computed[f"{t}.p_power_nonzero"] = nonzero
        notes[f"{t}.primes"] = ",".join(map(str, primes))
        notes[f"{t}.coxeter_number"] = hc
    return computed, notes


# -- C2, C3, C11: sl2-modules ---------------------------------------------------


def check_c2(spec: CheckSpec, sel: Selection) -> Outcome:
    computed: dict[str, object] = {}
    for p in spec.primes:
        if not sel.prime_ok(p):
            continue
        M = indecomposable_kL(p)
        ep, fp = M.partitions()
        computed[f"{p}.e_partition"] = str(ep)
        computed[f"{p}.f_partition"] = str(fp)
        computed[f"{p}.completely_reducible"] = is_completely_reducible(M.as_action())
    return computed, {}


def check_c3(spec: CheckSpec, sel: Selection) -> Outcome:
    from ..cohomology import h1

    computed: dict[str, object] = {}
    for p in spec.primes:
        if sel.prime_ok(p):
            dims = [h1(SL2_STRUCTURE, simple_L(p, m).as_action()).h1_dim for m in range(p)]
            computed[f"{p}.h1"] = ",".join(map(str, dims))
    return computed, {}


def _even_lift(r: int, p: int) -> int:
    """The even integer congruent to r mod p in the range [-(p-1), p-1]."""
    r %= p
    return r if r % 2 == 0 else r - p


def check_c11(spec: CheckSpec, sel: Selection) -> Outcome:
    computed: dict[str, object] = {}
    for p in spec.primes:
        if not sel.prime_ok(p):
            continue
        computed[f"{p}.lambda0"] = a_family_bracket_check(p, 0)
        computed[f"{p}.lambda1"] = a_family_bracket_check(p, 1)
        F = GF(p)
        e, f, _ = a_family(p, 0)
        ef = F.reduce(matmul(e, f, F) - matmul(f, e, F))
        diagonal = not np.any(ef - np.diag(np.diag(ef)))
        vals = [_even_lift(int(v), p) for v in np.diag(ef)] if diagonal else []
        computed[f"{p}.diagonal"] = ",".join(map(str, vals)) if diagonal else "not diagonal"
    return computed, {}


# -- C4, C5: W1 subalgebras -------------------------------------------------------


def _anchor_residue(L: LieAlgebra, e, f) -> int | None:
    """c with ad(e)^(p-1) f = c e, or None when the left side is not a multiple of e."""
    F = L.field
    top = f
    for _ in range(F.p - 1):
        top = L.bracket(e, top)
    nz = np.flatnonzero(e)
    if len(nz) == 0 or not L.is_zero(F.reduce(top * e[nz[0]] - e * top[nz[0]])):
        return None
    return int(top[nz[0]]) * F.inv(int(e[nz[0]])) % F.p


def w1_basis(L: LieAlgebra, e, f) -> dict[int, np.ndarray] | None:
    """w_{-1}..w_{p-2} with w_{-1} = e, matching X^(j+1) d under [X^i d, X^j d] = (j-i) X^(i+j-1) d.

    ad(e)^(p-1) f = c e fixes the scalar: w_{p-2} = -f / c, so that
    ad(e)^(p-1) w_{p-2} = -e.  None when c is 0 or undefined.
    """
    F = L.field
    c = _anchor_residue(L, e, f)
    if not c:
        return None
    w = {F.p - 2: F.reduce(-F.array(f) * F.inv(c))}
    for j in range(F.p - 2, -1, -1):
        w[j - 1] = F.reduce(L.bracket(e, w[j]) * F.inv(j + 1))
    return w


def w1_relations(L: LieAlgebra, e, f) -> bool:
    F = L.field
    p = F.p
    w = w1_basis(L, e, f)
    if w is None or not L.is_zero(F.reduce(w[-1] - F.array(e))):
        return False
    zero = F.zeros(L.dim)
    for i in range(-1, p - 1):
        for j in range(i + 1, p - 1):
            k = i + j
            rhs = F.reduce((j - i) * w[k]) if -1 <= k <= p - 2 else zero
            if not L.is_zero(F.reduce(L.bracket(w[i], w[j]) - rhs)):
                return False
    return True


def _anchor(L: LieAlgebra, e, f) -> int | None:
    c = _anchor_residue(L, e, f)
    if c is None:
        return None
    return c if 2 * c <= L.field.p else c - L.field.p


def _adjoint_socle(L: LieAlgebra, gens) -> int:
    return socle(ModuleAction(L.field, [L.ad(g) for g in gens])).dim


def _w1_check(spec: CheckSpec, with_descent: bool) -> Outcome:
    L = _algebra(spec)
    g1, g2, lg2 = (L.parse(spec.data[k]) for k in ("g1", "g2", "levi_g2"))
    notes: dict[str, object] = {"sign_classes": count_classes(L, [g1, g2])}

    def accept(v):
        return L.spin_subalgebra(v).dim == 7 and w1_relations(L, *v)

    found = search_signs(L, [g1, g2], accept)
    if found is not None:
        cls, (g1, g2) = found
        notes["flipped_roots"] = [list(r) for r in cls.flipped]
        notes["signed_g2"] = L.format(g2)
    else:
        notes["flipped_roots"] = None
    S = L.spin_subalgebra([g1, g2])
    computed: dict[str, object] = {
        "dim": S.dim,
        "w1_relations": w1_relations(L, g1, g2),
        "p_power_zero": L.is_zero(L.p_power(g1)) and L.is_zero(L.p_power(g2)),
    }
    notes["anchor_coefficient"] = _anchor(L, g1, g2)
    computed["socle"] = _adjoint_socle(L, [g1, g2])
    hbar = L.spin_subalgebra([g1, lg2])
    computed["levi_dim"] = hbar.dim
    computed["levi_socle"] = _adjoint_socle(L, [g1, lg2])
    J = [int(j) for j in spec.data["levi"].split(",")]
    pd = standard_parabolic(L, J)
    notes["levi_contains_hbar"] = hbar <= pd.levi
    if with_descent:
        if not S <= pd.levi + pd.nilrad:
            pd = standard_parabolic(L, J, opposite=True)
        res = filtered_descent(L, pd, hbar, S)
        computed["descent_obstructed"] = not res.landed
        notes["obstruction_level"] = res.obstruction_level
        notes["parabolic"] = "opposite" if pd.opposite else "standard"
    return computed, notes


def check_c4(spec: CheckSpec, sel: Selection) -> Outcome:
    return _w1_check(spec, with_descent=True)


def check_c5(spec: CheckSpec, sel: Selection) -> Outcome:
    return _w1_check(spec, with_descent=False)


# -- C6, C7: triples in bad characteristic -------------------------------------------


def check_c6(spec: CheckSpec, sel: Selection) -> Outcome:
    L = _algebra(spec)
    e, h, f = (L.parse(spec.data[k]) for k in ("e", "h", "f"))
    notes: dict[str, object] = {
        "identity_signs_verify": verify_triple(L, e, h, f),
        "sign_classes": count_classes(L, [e, f]),
    }
    found = search_signs(L, [e, h, f], lambda v: verify_triple(L, *v))
    if found is None:
        return {"triple": False, "h_among_extensions": False}, notes
    cls, (e, h, f) = found
    notes["flipped_roots"] = [list(r) for r in cls.flipped]
    triples = extend_mod_p(L, e)
    notes["extensions"] = [L.format(t.h) for t in triples]
    hit = any(L.is_zero(L.field.reduce(t.h - h)) for t in triples)
    return {"triple": True, "h_among_extensions": hit}, notes


def check_c7(spec: CheckSpec, sel: Selection) -> Outcome:
    L = _algebra(spec)
    e = L.parse(spec.data["e"])
    try:
        extend_mod_p(L, e)
        no_triple = False
    except NoTriple:
        no_triple = True
    return {"solvable": solvable_square(L, e), "no_triple": no_triple}, {}


# -- C8, C9, C10: orbit arguments --------------------------------------------------


def _signed_triple(L: LieAlgebra, spec: CheckSpec, notes: dict) -> tuple[np.ndarray, np.ndarray, np.ndarray, bool]:
    e, h, f = (L.parse(spec.data[k]) for k in ("e", "h", "f"))
    found = search_signs(L, [e, h, f], lambda v: verify_triple(L, *v))
    if found is None:
        return e, h, f, False
    cls, (e, h, f) = found
    notes["flipped_roots"] = [list(r) for r in cls.flipped]
    return e, h, f, True


def check_c8(spec: CheckSpec, sel: Selection) -> Outcome:
    L = _algebra(spec)
    notes: dict[str, object] = {}
    e, h, f, ok = _signed_triple(L, spec, notes)
    computed: dict[str, object] = {"triple": ok, "h_toral": L.is_toral(h)}
    computed["fbar_partition"] = str(partition_of(L, f))
    g = L.tau_grading(_integral_h(spec))
    G = L.graded_component(L.centralizer(e), g, int(spec.data["weight"]))
    computed["ge_dim"] = G.dim
    notes["ge_basis"] = [L.format(v) for v in G.basis]
    F = L.field
    rng = np.random.default_rng(int(spec.data["seed"]))
    samples = [v for v in G.basis]
    while len(samples) < int(spec.data["samples"]):
        c = rng.integers(0, F.p, G.dim)
        if np.any(c):
            samples.append(F.reduce(matmul(c.reshape(1, -1), G.basis, F)[0]))
    base = orbit_dimension(L, f)
    parts, dims = [], []
    for f1 in samples:
        x = F.reduce(f + f1)
        parts.append(str(partition_of(L, x)))
        dims.append(orbit_dimension(L, x))
    computed["sum_partition"] = "|".join(sorted(set(parts)))
    computed["orbit_dim_increases"] = all(d > base for d in dims)
    notes.update(fbar_orbit_dim=base, sample_orbit_dims=dims, samples=len(samples))
    return computed, notes


def check_c9(spec: CheckSpec, sel: Selection) -> Outcome:
    L = _algebra(spec)
    p = L.field.p
    notes: dict[str, object] = {}
    e, h, f, ok = _signed_triple(L, spec, notes)
    g = L.tau_grading(_integral_h(spec))
    C = L.centralizer(e)
    src = L.graded_component(C, g, p)
    dst = L.graded_component(C, g, p - 2)
    xs = [L.parse(spec.data[k]) for k in ("x1", "x2")]
    computed: dict[str, object] = {
        "triple": ok,
        "x_in_ge_p": all(src.contains(x) for x in xs),
        "ge5_dim": dst.dim,
    }
    M = delta_map(L, f, L.subspace(xs), dst, g.weights, p - 2)
    computed["delta_rank"] = rank(M, L.field)
    notes.update(ge_p_dim=src.dim, delta_matrix=M.tolist())
    return computed, notes


def check_c10(spec: CheckSpec, sel: Selection) -> Outcome:
    L = _algebra(spec)
    F, p = L.field, L.field.p
    LQ = lie_algebra(spec.types[0])
    e = L.parse(spec.data["e"])
    t0 = jm_extend_char0(LQ, LQ.parse(spec.data["e"]))
    h_int = [int(c) for c in _cartan_coeffs(LQ, t0.h)]
    if any(t0.h[: LQ.nroots] != 0):
        raise ArithmeticError("rational h is not in the Cartan subalgebra")
    hbar, fbar = F.array(t0.h), F.array(t0.f)
    triples = extend_mod_p(L, e)
    matched = [t for t in triples if L.is_zero(F.reduce(t.h - hbar))]
    notes: dict[str, object] = {
        "h_integral": h_int,
        "extensions": [L.format(t.h) for t in triples],
        "extensions_matching_rational_h": len(matched),
    }
    g = L.tau_grading(h_int)
    C = L.centralizer(e)
    src = L.graded_component(C, g, p)
    dst = L.graded_component(C, g, p - 2)
    x, img = L.parse(spec.data["x"]), L.parse(spec.data["image"])
    computed: dict[str, object] = {
        "triple": verify_triple(L, e, hbar, fbar) and bool(matched),
        "x_in_ge_p": src.contains(x),
    }
    col = delta_map(L, fbar, L.subspace([x]), dst, g.weights, p - 2)[:, 0]
    computed["delta_nonzero"] = bool(np.any(col != 0))
    dx = F.reduce(matmul(col.reshape(1, -1), dst.basis, F)[0]) if dst.dim else F.zeros(L.dim)
    computed["image_proportional"] = bool(np.any(dx != 0)) and L.subspace([img]).contains(dx)
    base = orbit_dimension(L, fbar)
    lit = orbit_dimension(L, F.reduce(fbar + x))
    computed["orbit_dim_increases"] = lit > base
    D = delta_map(L, fbar, src, dst, g.weights, p - 2)
    image = Subspace(F, L.dim, matmul(np.ascontiguousarray(D.T), dst.basis, F)) if dst.dim else dst
    off = [v for v in dst.basis if not image.contains(v)]
    off_dims = [orbit_dimension(L, F.reduce(fbar + v)) for v in off]
    computed["off_image_increases"] = bool(off) and all(d > base for d in off_dims)
    notes.update(
        ge_p_dim=src.dim,
        ge_p_minus_2_dim=dst.dim,
        fbar_orbit_dim=base,
        fbar_plus_x_orbit_dim=lit,
        fbar_plus_image_orbit_dim=orbit_dimension(L, F.reduce(fbar + img)),
        off_image_orbit_dims=off_dims,
    )
    return computed, notes


# -- C12: an sl3 in E7 ---------------------------------------------------------------


def sl3_relations(L: LieAlgebra, x1, x2, y1, y2) -> bool:
    F = L.field
    B = L.bracket

    def z(v) -> bool:
        return L.is_zero(F.reduce(v))

    h1, h2 = B(x1, y1), B(x2, y2)
    if Subspace(F, L.dim, [h1, h2]).dim != 2:
        return False
    A = [[2, -1], [-1, 2]]
    xs, ys, hs = (x1, x2), (y1, y2), (h1, h2)
    for i in range(2):
        for j in range(2):
            if not z(B(hs[i], xs[j]) - A[i][j] * xs[j]) or not z(B(hs[i], ys[j]) + A[i][j] * ys[j]):
                return False
            if i != j:
                if not z(B(xs[i], ys[j])):
                    return False
                if not z(B(xs[i], B(xs[i], xs[j]))) or not z(B(ys[i], B(ys[i], ys[j]))):
                    return False
    return not L.is_zero(B(x1, x2))


def check_c12(spec: CheckSpec, sel: Selection) -> Outcome:
    L = _algebra(spec)
    F = L.field
    names = ("e_alpha", "e_beta", "e_minus_alpha", "e_minus_beta")
    gens = [L.parse(spec.data[k]) for k in names]
    notes: dict[str, object] = {"identity_signs_hold": sl3_relations(L, *gens)}
    chosen = None
    # re-sign the displayed sl3 basis: e_alpha stays fixed, the other three may flip
    for signs in sorted(itertools.product((1, -1), repeat=3), key=lambda s: (s.count(-1), [-c for c in s])):
        cand = [gens[0]] + [F.reduce(c * g) for c, g in zip(signs, gens[1:])]
        if sl3_relations(L, *cand):
            chosen = (signs, cand)
            break
    computed: dict[str, object] = {"spin_dim": L.spin_subalgebra(gens).dim, "sl3_relations": chosen is not None}
    if chosen is None:
        computed.update(highest_root=False, highest_root_type=False)
        return computed, notes
    signs, (x1, x2, y1, y2) = chosen
    notes["sign_pattern"] = dict(zip(names, (1,) + signs))
    e = L.bracket(x1, x2)
    f = L.bracket(y2, y1)
    h = L.bracket(e, f)
    computed["highest_root"] = (
        L.is_zero(L.bracket(x1, e))
        and L.is_zero(L.bracket(x2, e))
        and L.is_zero(F.reduce(L.bracket(h, e) - 2 * e))
        and not L.is_zero(e)
    )
    computed["highest_root_type"] = str(partition_of(L, e)) == str(partition_of(L, L.parse(spec.data["a4a1"])))
    S = L.spin_subalgebra(gens)
    fbar = L.parse(spec.data["fbar"])
    notes.update(
        e=L.format(e),
        f_highest=L.format(f),
        fbar_in_subalgebra=S.contains(fbar),
        fbar_completes_triple=verify_triple(L, e, L.bracket(e, fbar), fbar),
    )
    return computed, notes


REGISTRY: dict[str, Callable[[CheckSpec, Selection], Outcome]] = {
    "C1": check_c1,
    "C2": check_c2,
    "C3": check_c3,
    "C4": check_c4,
    "C5": check_c5,
    "C6": check_c6,
    "C7": check_c7,
    "C8": check_c8,
    "C9": check_c9,
    "C10": check_c10,
    "C11": check_c11,
    "C12": check_c12,
}

__all__ = ["REGISTRY", "Selection", "sl3_relations", "w1_basis", "w1_relations"]
