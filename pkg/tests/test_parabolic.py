from __future__ import annotations

import numpy as np
import pytest

from modlie.chevalley import lie_algebra
from modlie.exactla.linalg import Subspace, matmul
from modlie.exactla.jordan import jordan_partition
from modlie.parabolic import (
    layer_action,
    level_additivity_failures,
    parabolic_subspace,
    standard_parabolic,
    subalgebra_structure,
)
from modlie.rootsys import RootSystemError


def test_all_simple_roots_give_the_whole_algebra():
    L = lie_algebra("F4")
    pd = standard_parabolic(L, [1, 2, 3, 4])
    assert pd.nilrad.dim == 0
    assert pd.levi.dim == L.dim
    assert pd.layer_dims() == []


def test_e7_with_e6_levi():
    L = lie_algebra("E7")
    pd = standard_parabolic(L, [1, 2, 3, 4, 5, 6])
    assert pd.layer_dims() == [{"level": 1, "dim": 27}]
    assert pd.levi.dim == 78 + 1


def test_e7_without_node_two():
    # dropping node 2 leaves the chain 1-3-4-5-6-7, an A6 Levi
    L = lie_algebra("E7")
    pd = standard_parabolic(L, [1, 3, 4, 5, 6, 7])
    assert pd.levi.dim == 48 + 1
    assert pd.layer_dims() == [{"level": 1, "dim": 35}, {"level": 2, "dim": 7}]


def test_f4_with_c3_levi():
    L = lie_algebra("F4")
    pd = standard_parabolic(L, [2, 3, 4])
    assert pd.layer_dims() == [{"level": 1, "dim": 14}, {"level": 2, "dim": 1}]
    assert pd.levi.dim == 21 + 1


@pytest.mark.parametrize("name, J", [("F4", [2, 3, 4]), ("E6", [1, 3, 4, 5, 6]), ("G2", [1]), ("B3", []), ("E7", [1, 2, 3, 4, 5, 6])])
def test_level_structure(name, J):
    L = lie_algebra(name)
    pd = standard_parabolic(L, J)
    assert level_additivity_failures(L, pd) == 0
    assert pd.nilrad.dim == sum(d["dim"] for d in pd.layer_dims())
    assert pd.dim == parabolic_subspace(L, pd).dim
    assert L.is_subalgebra(parabolic_subspace(L, pd))
    opp = standard_parabolic(L, J, opposite=True)
    assert opp.levi == pd.levi
    assert opp.layer_dims() == pd.layer_dims()


def test_bad_index():
    with pytest.raises(RootSystemError):
        standard_parabolic(lie_algebra("G2"), [3])


def _regular_sl2_in_c3_levi(L):
    e = L.parse("e[0,1,0,0]+e[0,0,1,0]+e[0,0,0,1]")
    f = L.parse("e[0,-1,0,0]+e[0,0,-1,0]+e[0,0,0,-1]")
    return L.spin_subalgebra([e, f])


def test_layer_action_is_a_representation():
    L = lie_algebra("F4", 7)
    pd = standard_parabolic(L, [2, 3, 4])
    sub = _regular_sl2_in_c3_levi(L)
    assert sub <= pd.levi
    for level, idx in pd.layers:
        act = layer_action(L, pd, sub, level)
        assert act.dim == len(idx)
        assert act.bracket_defect() == 0


def test_layer_action_edge_cases():
    L = lie_algebra("F4", 7)
    pd = standard_parabolic(L, [2, 3, 4])
    zero = layer_action(L, pd, Subspace.zero(L.field, L.dim), 1)
    assert zero.dim == 14 and not np.any(zero.actions[0])
    assert layer_action(L, pd, _regular_sl2_in_c3_levi(L), 5).dim == 0
    with pytest.raises(ValueError):
        layer_action(L, pd, Subspace(L.field, L.dim, [L.e((1, 0, 0, 0))]), 1)


def test_regular_sl2_on_the_14_dimensional_layer():
    L = lie_algebra("F4", 7)
    pd = standard_parabolic(L, [2, 3, 4])
    sub = _regular_sl2_in_c3_levi(L)
    act = layer_action(L, pd, sub, 1)
    e = L.parse("e[0,1,0,0]+e[0,0,1,0]+e[0,0,0,1]")
    coords = sub.coordinates(e)
    A = sum(int(c) * M for c, M in zip(coords, act.actions)) % 7
    blocks = jordan_partition(A, L.field).blocks
    assert sum(blocks) == 14


def test_subalgebra_structure_matches_brackets():
    L = lie_algebra("A2", 5)
    sub = L.subspace([L.e((1, 0)), L.e((-1, 0)), L.h(1)])
    T = subalgebra_structure(L, sub)
    B = sub.basis
    for i in range(3):
        for j in range(3):
            lhs = L.bracket(B[i], B[j])
            rhs = matmul(T[i, j].reshape(1, -1), B, L.field)[0]
            assert np.array_equal(lhs, rhs)
    with pytest.raises(ValueError):
        subalgebra_structure(L, L.subspace([L.e((1, 0)), L.e((0, 1))]))
