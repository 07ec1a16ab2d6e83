from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlie.chevalley import (
    NontrivialCenter,
    ParseError,
    jacobi_failures,
    lie_algebra,
    structure_tensor,
)
from modlie.exactla.jordan import jordan_partition
from modlie.exactla.linalg import matpow


def _string_length_below(rs, a, b):
    """Largest r with b - r*a a root."""
    r = 0
    while rs.is_root(tuple(y - (r + 1) * x for x, y in zip(a, b))):
        r += 1
    return r


def test_sl2_relations():
    L = lie_algebra("A1")
    e, f, h = L.e((1,)), L.e((-1,)), L.h(1)
    assert L.dim == 3
    assert np.array_equal(L.bracket(e, f), h)
    assert np.array_equal(L.bracket(h, e), 2 * e)
    assert np.array_equal(L.bracket(h, f), -2 * f)
    assert L.is_zero(L.bracket(e, e))


@pytest.mark.parametrize("name, p, dim", [("G2", 5, 14), ("E8", 11, 248), ("F4", None, 52), ("E6", 7, 78)])
def test_dimensions(name, p, dim):
    assert lie_algebra(name, p).dim == dim


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_structure_constant_magnitudes(name):
    # |N_{a,b}| = r + 1 where r is the length of the a-string below b
    L = lie_algebra(name)
    rs = L.rs
    T = structure_tensor(name)
    for i, a in enumerate(rs.roots):
        for j, b in enumerate(rs.roots):
            s = tuple(x + y for x, y in zip(a, b))
            if not rs.is_root(s):
                continue
            N = T[i, j, rs.index(s)]
            assert abs(N) == _string_length_below(rs, a, b) + 1
            assert T[j, i, rs.index(s)] == -N


def test_g2_simple_bracket():
    L = lie_algebra("G2")
    out = L.bracket(L.e((1, 0)), L.e((0, 1)))
    assert np.count_nonzero(out) == 1
    assert abs(out[L.rs.index((1, 1))]) == 1


@pytest.mark.parametrize("name, p", [("G2", 5), ("A2", None), ("B3", 7), ("D4", 3)])
def test_jacobi_exhaustive(name, p):
    assert jacobi_failures(lie_algebra(name, p)) == 0


def test_jacobi_sampled_e8():
    L = lie_algebra("E8")
    rng = np.random.default_rng(0)
    assert jacobi_failures(L, rng.integers(0, L.dim, size=(20000, 3))) == 0


def test_ad_conventions():
    L = lie_algebra("A1")
    assert not np.any(L.ad(np.zeros(3, dtype=np.int64)) != 0)
    assert [int(x) for x in np.diag(L.ad(L.h(1)))] == [2, -2, 0]


def test_g2_regular_partition_over_q():
    # the principal sl2 of G2 has exponents 1 and 5, so g = V(2) + V(10)
    L = lie_algebra("G2")
    x = L.parse("e[1,0]+e[0,1]")
    assert str(jordan_partition(L.ad(x), L.field)) == "11+3"
    assert np.any(matpow(L.ad(x), 10, L.field) != 0)
    assert not np.any(matpow(L.ad(x), 11, L.field) != 0)


def test_p_power_examples():
    G2 = lie_algebra("G2", 5)
    for r in G2.rs.roots:
        assert G2.is_zero(G2.p_power(G2.e(r)))
    F4 = lie_algebra("F4", 5)
    assert np.array_equal(F4.p_power(F4.h(1)), F4.h(1))
    e = F4.parse("e[1,0,0,0]+e[0,1,0,0]+e[0,0,1,0]+e[0,0,0,1]")
    assert not F4.is_zero(F4.p_power(e))


@settings(max_examples=15, deadline=None)
@given(
    case=st.sampled_from([("A2", 5), ("A2", 7), ("B2", 3), ("B2", 5), ("G2", 5), ("G2", 7), ("C3", 5)]),
    seed=st.integers(0, 2**32 - 1),
)
def test_p_power_matches_ad_power(case, seed):
    name, p = case
    L = lie_algebra(name, p)
    x = np.random.default_rng(seed).integers(0, p, size=L.dim)
    y = L.p_power(x)
    assert np.array_equal(L.ad(y), matpow(L.ad(x), p, L.field))


def test_p_power_needs_trivial_center():
    # sl3 in characteristic 3 has the scalar matrices as center
    L = lie_algebra("A2", 3)
    assert L.center_dim() == 1
    with pytest.raises(NontrivialCenter):
        L.p_power(L.h(1))


def test_toral():
    L = lie_algebra("F4", 7)
    assert L.is_toral(L.h(1))
    assert not L.is_toral(L.e((1, 0, 0, 0)))


def test_tau_grading():
    A1 = lie_algebra("A1")
    assert A1.tau_grading([1]).weights == (2, -2, 0)
    assert set(A1.tau_grading([0]).weights) == {0}
    E7 = lie_algebra("E7")
    e = E7.parse("e[1,0,0,0,0,0,0]+e[0,0,1,0,0,0,0]+e[0,0,0,1,0,0,0]+e[0,0,0,0,1,0,0]+e[0,0,0,0,0,1,0]")
    g = E7.tau_grading([5, 0, 8, 9, 8, 5, 0])
    assert {g.weights[k] for k in np.flatnonzero(e)} == {2}


def test_centralizer_and_graded_component():
    L = lie_algebra("A1", 5)
    assert L.centralizer(np.zeros(3, dtype=np.int64)).dim == 3
    C = L.centralizer(L.e((1,)))
    assert C.dim == 1 and C.contains(L.e((1,)))
    g = L.tau_grading([1])
    whole = L.subspace(np.eye(3, dtype=np.int64))
    assert L.graded_component(whole, g, 7).dim == 0
    assert L.graded_component(whole, g, 0).dim >= 1


def test_spin_and_reachable():
    L = lie_algebra("A2")
    assert L.spin_subalgebra([L.e((1, 0)), L.e((-1, 0))]).dim == 3
    assert L.reachable(np.zeros(L.dim, dtype=np.int64))
    assert L.reachable(L.e((1, 1)))
    A1 = lie_algebra("A1")
    assert not A1.reachable(A1.e((1,)))


def test_subalgebra_predicates():
    L = lie_algebra("A2", 5)
    b = L.subspace([L.e((1, 0)), L.e((0, 1)), L.e((1, 1)), L.h(1), L.h(2)])
    assert L.is_subalgebra(b)
    assert L.is_p_closed(b)
    assert not L.is_subalgebra(L.subspace([L.e((1, 0)), L.e((0, 1))]))


def test_parse_examples():
    G2 = lie_algebra("G2")
    assert np.array_equal(G2.parse("e[1,0]"), G2.e((1, 0)))
    f = G2.parse("6*e[-1,0] + 10*e[0,-1]")
    assert f[G2.rs.index((-1, 0))] == 6 and f[G2.rs.index((0, -1))] == 10
    B3 = lie_algebra("B3")
    assert np.array_equal(B3.parse("h[1] + 2*h[3]"), B3.h(1) + 2 * B3.h(3))
    assert G2.is_zero(G2.parse("0"))
    x = G2.parse("1/2*h[1] - e[3,2]")
    assert x[G2.nroots] == pytest.approx(0.5) and x[G2.rs.index((3, 2))] == -1


@pytest.mark.parametrize("text", ["e[1,1,0]", "e[2,0]", "h[3]", "3*", "e[1,0] e[0,1]", "x[1]", "1/0*h[1]"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        lie_algebra("G2").parse(text)


@settings(max_examples=30, deadline=None)
@given(name=st.sampled_from(["G2", "B3", "E6"]), p=st.sampled_from([None, 7]), seed=st.integers(0, 2**32 - 1))
def test_format_round_trip(name, p, seed):
    L = lie_algebra(name, p)
    rng = np.random.default_rng(seed)
    x = rng.integers(-5, 6, size=L.dim) * (rng.random(L.dim) < 0.2)
    x = L.field.array(x)
    assert np.array_equal(L.parse(L.format(x)), x)


def test_algebras_are_cached():
    assert lie_algebra("G2", 5) is lie_algebra("G2", 5)
