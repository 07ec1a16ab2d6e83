from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlie.chevalley import lie_algebra
from modlie.cohomology import (
    SL2_P_MAP,
    coboundary,
    complement_from_cocycle,
    conjugate_by_unipotent,
    filtered_descent,
    gamma_cocycle,
    h1,
    is_closed,
    is_cocycle,
)
from modlie.exactla.fields import GF
from modlie.exactla.linalg import Subspace, matmul
from modlie.exactla.modules import InconsistentAction, ModuleAction
from modlie.parabolic import standard_parabolic
from modlie.sl2core import truncated_exp
from modlie.sl2reps import SL2_STRUCTURE, dual, simple_L, tensor, uniserial_W


def test_h1_examples():
    assert h1(SL2_STRUCTURE, simple_L(5, 0).as_action()).h1_dim == 0
    assert h1(SL2_STRUCTURE, simple_L(5, 3).as_action()).h1_dim == 2
    for m in (0, 1, 2, 3, 4, 6):
        assert h1(SL2_STRUCTURE, simple_L(7, m).as_action()).h1_dim == 0


@pytest.mark.parametrize(
    "module, restricted",
    [
        (simple_L(5, 3), True),
        (simple_L(7, 2), True),
        (uniserial_W(5, 1), False),
        (tensor(dual(simple_L(5, 1)), simple_L(5, 2)), True),
    ],
    ids=["L3_p5", "L2_p7", "W_5_1", "hom_1_2"],
)
def test_cocycle_space_invariants(module, restricted):
    act = module.as_action()
    cs = h1(SL2_STRUCTURE, act)
    assert cs.b1_dim == act.dim - act.invariants().dim
    for z in cs.z1_basis:
        assert is_cocycle(SL2_STRUCTURE, act, z)
    rng = np.random.default_rng(1)
    for _ in range(5):
        phi = coboundary(act, rng.integers(0, module.p, size=act.dim))
        assert cs.contains(phi) and cs.is_coboundary(phi)
    if restricted:
        assert h1(SL2_STRUCTURE, act, p_map=SL2_P_MAP).z1_dim <= cs.z1_dim
    else:
        # e acts with a Jordan block longer than p, so e^p is not zero on the module
        with pytest.raises(InconsistentAction):
            h1(SL2_STRUCTURE, act, p_map=SL2_P_MAP)


def test_gamma_cocycles():
    p = 5
    act = simple_L(p, p - 2).as_action()
    cs = h1(SL2_STRUCTURE, act)
    assert not np.any(gamma_cocycle(p, 0, 0))
    comb = (gamma_cocycle(p, 1, 1) - gamma_cocycle(p, 1, 0) - gamma_cocycle(p, 0, 1)) % p
    assert not np.any(comb)
    g10, g01 = gamma_cocycle(p, 1, 0), gamma_cocycle(p, 0, 1)
    for g in (g10, g01):
        assert is_cocycle(SL2_STRUCTURE, act, g)
        assert not cs.is_coboundary(g)
    c10, c01 = cs.class_coordinates(g10), cs.class_coordinates(g01)
    assert np.linalg.matrix_rank(np.array([c10, c01], dtype=float)) == 2


def test_complements():
    p = 7
    act = simple_L(p, p - 2).as_action()
    F = GF(p)
    base = complement_from_cocycle(SL2_STRUCTURE, act, np.zeros((act.dim, 3), dtype=np.int64))
    assert base == Subspace(F, 3 + act.dim, np.concatenate([F.eye(3), F.zeros((3, act.dim))], axis=1))
    v = np.arange(act.dim) % p
    twisted = complement_from_cocycle(SL2_STRUCTURE, act, coboundary(act, v))
    assert is_closed(SL2_STRUCTURE, act, twisted)
    assert conjugate_by_unipotent(act, twisted, v) == base
    gamma = complement_from_cocycle(SL2_STRUCTURE, act, gamma_cocycle(p, 1, 0))
    assert is_closed(SL2_STRUCTURE, act, gamma)
    with pytest.raises(ValueError):
        complement_from_cocycle(SL2_STRUCTURE, act, gamma_cocycle(p, 1, 0) + 1)


@settings(max_examples=25, deadline=None)
@given(p=st.sampled_from([5, 7]), a=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_gamma_complement_is_never_conjugate_to_h(p, a, seed):
    # conjugating by 1+v only changes the cocycle by a coboundary, so the class survives
    act = simple_L(p, p - 2).as_action()
    base = complement_from_cocycle(SL2_STRUCTURE, act, np.zeros((act.dim, 3), dtype=np.int64))
    gamma = complement_from_cocycle(SL2_STRUCTURE, act, gamma_cocycle(p, a % p or 1, 0))
    v = np.random.default_rng(seed).integers(0, p, size=act.dim)
    assert conjugate_by_unipotent(act, gamma, v) != base


def test_inconsistent_action_is_rejected():
    M = simple_L(5, 2)
    bad = ModuleAction(GF(5), [M.e, M.e, M.h], SL2_STRUCTURE)
    with pytest.raises(InconsistentAction):
        h1(SL2_STRUCTURE, bad)
    with pytest.raises(InconsistentAction):
        h1(SL2_STRUCTURE, ModuleAction(GF(5), [M.e, M.f]))


def _a3_setup():
    L = lie_algebra("A3", 5)
    pd = standard_parabolic(L, [1, 2])
    e = L.parse("e[1,0,0]+e[0,1,0]")
    f = L.parse("2*e[-1,0,0]+2*e[0,-1,0]")
    hbar = L.subspace([e, f, L.bracket(e, f)])
    return L, pd, hbar


def test_descent_trivial_case():
    L, pd, hbar = _a3_setup()
    assert L.is_subalgebra(hbar) and hbar <= pd.levi
    res = filtered_descent(L, pd, hbar, hbar)
    assert res.landed and res.conjugators == []
    assert res.final == hbar


def test_descent_undoes_a_unipotent_twist():
    L, pd, hbar = _a3_setup()
    F = L.field
    v = L.parse("e[0,0,1]+3*e[0,1,1]+2*e[1,1,1]")
    E = truncated_exp(L, v)
    hprime = Subspace(F, L.dim, matmul(hbar.basis, np.ascontiguousarray(E.T), F))
    assert hprime != hbar and L.is_subalgebra(hprime)
    res = filtered_descent(L, pd, hbar, hprime)
    assert res.landed
    assert res.final == hbar
    assert len(res.conjugators) == 1
    # the image modulo the nilradical is unchanged
    assert (res.final + pd.nilrad) == (hprime + pd.nilrad)


def test_descent_dimension_mismatch():
    L, pd, hbar = _a3_setup()
    with pytest.raises(ValueError):
        filtered_descent(L, pd, hbar, L.subspace([hbar.basis[0]]))
