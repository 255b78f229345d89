from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualpolar.qnum import gauss_binom
from dualpolar.scheme import (
    SchemeFamily,
    SchemeParams,
    adjacency_intersection_numbers,
    adjacency_to_riemann,
    exact_matmul,
    g_matrix,
    q_power,
    rho,
    rho_semilattice,
    riemann_base_change,
    riemann_to_adjacency,
    structure_tensor,
)

FAMILIES = [f.value for f in SchemeFamily]


def test_family_exponents():
    assert [SchemeFamily.parse(f).two_e for f in FAMILIES] == [2, 2, 0, 4, 3, 1]
    assert SchemeParams("2A-odd", 2, 3).q == 9
    assert SchemeParams("D", 2, 3).q == 3
    with pytest.raises(ValueError):
        SchemeFamily.parse("E")
    with pytest.raises(ValueError):
        SchemeParams("C", 0, 2)
    with pytest.raises(ValueError):
        SchemeParams("C", 1, 1)


def test_q_power():
    assert q_power(SchemeParams("2A-even", 1, 2), 3) == 8
    assert q_power(SchemeParams("C", 1, 3), 4) == 9
    assert q_power(SchemeParams("D", 1, 2), 0) == 1
    with pytest.raises(ValueError):
        q_power(SchemeParams("C", 1, 3), 3)


def test_rho_examples():
    assert rho(SchemeParams("C", 1, 2), 0, 0, 0) == 3
    assert rho(SchemeParams("2A-even", 1, 2), 0, 0, 0) == 9
    assert rho(SchemeParams("C", 2, 2), 1, 1, 1) == 4
    assert rho_semilattice(SchemeParams("C", 2, 2), 1, 1, 1) == 4
    assert rho(SchemeParams("D", 2, 3), 0, 0, 0) == 8
    assert rho_semilattice(SchemeParams("D", 2, 3), 0, 0, 0) == 8
    # u > min(s, t) and d - s - t + u < 0 both vanish
    assert rho(SchemeParams("C", 3, 2), 1, 2, 2) == 0
    assert rho(SchemeParams("C", 3, 2), 3, 3, 0) == 0


@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("d", range(1, 7))
def test_top_corner_and_identity_column(fam, d):
    params = SchemeParams(fam, d, 3)
    t = structure_tensor(params).rho
    assert t[d, d, d] == 1
    assert (t[d] == np.eye(d + 1, dtype=int)).all()


def test_c1_full_tensor():
    t = structure_tensor(SchemeParams("C", 1, 2)).rho
    assert t[0, 0, 0] == 3 and t[1, 0, 0] == 1 and t[0, 1, 0] == 1 and t[1, 1, 1] == 1
    assert t[0, 0, 1] == 0 and t[1, 1, 0] == 0


def test_size_matches_product():
    for fam in FAMILIES:
        for d in range(1, 7):
            for b in (2, 3, 5):
                params = SchemeParams(fam, d, b)
                expected = 1
                for l in range(d):
                    expected *= 1 + q_power(params, params.two_e + 2 * l)
                assert structure_tensor(params).rho[0, 0, 0] == expected


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(1, 8), st.integers(2, 5))
def test_product_equals_semilattice(fam, d, b):
    params = SchemeParams(fam, d, b)
    for s in range(d + 1):
        for t in range(d + 1):
            for u in range(min(s, t) + 1):
                assert rho(params, s, t, u) == rho_semilattice(params, s, t, u)


@pytest.mark.parametrize("fam", FAMILIES)
def test_symmetry_and_triangularity(fam):
    for d in range(1, 9):
        for b in (2, 3, 4, 5):
            t = structure_tensor(SchemeParams(fam, d, b)).rho
            assert (t == t.transpose(1, 0, 2)).all()
            for s in range(d + 1):
                for tt in range(d + 1):
                    assert not t[s, tt, min(s, tt) + 1:].any()
            assert all(v >= 0 for v in t.flat)


def assoc_defect(t):
    lhs = np.einsum("stv,vwx->stwx", t, t)
    rhs = np.einsum("twv,svx->stwx", t, t)
    return np.argwhere(lhs != rhs)


@pytest.mark.parametrize("fam", FAMILIES)
def test_associativity(fam):
    for d in range(1, 7):
        for b in (2, 3, 4):
            t = structure_tensor(SchemeParams(fam, d, b)).rho
            assert len(assoc_defect(t)) == 0


def test_hermitian_2a4_symmetry():
    t = structure_tensor(SchemeParams("2A-even", 2, 3)).rho
    assert (t == t.transpose(1, 0, 2)).all()


@pytest.mark.parametrize("fam", FAMILIES)
def test_g_matrix_representation(fam):
    for d in range(1, 7):
        params = SchemeParams(fam, d, 2)
        t = structure_tensor(params).rho
        gs = [g_matrix(params, s) for s in range(d + 1)]
        assert (gs[d] == np.eye(d + 1, dtype=int)).all()
        for s in range(d + 1):
            assert not np.triu(gs[s], 1).any()
            for tt in range(d + 1):
                lhs = exact_matmul(gs[s], gs[tt])
                rhs = sum(t[s, tt, u] * gs[u] for u in range(d + 1))
                assert (lhs == rhs).all()


def test_g_matrix_c1():
    assert g_matrix(SchemeParams("C", 1, 2), 0).tolist() == [[3, 0], [1, 0]]


def test_base_change_d1():
    bc = riemann_base_change(SchemeParams("C", 1, 2))
    # C_0 = A_0 + A_1, C_1 = A_0
    assert bc.c_from_a.tolist() == [[1, 1], [1, 0]]


@pytest.mark.parametrize("q", range(2, 10))
def test_base_change_round_trip(q):
    for d in range(1, 13):
        bc = riemann_base_change(SchemeParams("C", d, q))
        n = d + 1
        assert (exact_matmul(bc.inverse, bc.forward) == np.eye(n, dtype=int)).all()
        # closed-form inverse from the alternating-sum inversion identity
        closed = np.array(
            [[(-1) ** (m - i) * q ** comb(m - i, 2) * gauss_binom(m, i, q) if m >= i else 0
              for m in range(n)]
             for i in range(n)],
            dtype=object,
        )
        assert (bc.inverse == closed).all()


def test_intersection_numbers_c1():
    p = adjacency_intersection_numbers(SchemeParams("C", 1, 2))
    assert p[1, 1, 0] == 2
    assert p[1, 1, 1] == 1


@pytest.mark.parametrize("fam", FAMILIES)
def test_intersection_number_axioms(fam):
    for d in range(1, 6):
        params = SchemeParams(fam, d, 2)
        p = adjacency_intersection_numbers(params)
        n = d + 1
        assert (p[0] == np.eye(n, dtype=int)).all()
        valency = [p[i, i, 0] for i in range(n)]
        for i in range(n):
            for k in range(n):
                assert sum(p[i, :, k]) == valency[i]
        assert sum(valency) == structure_tensor(params).rho[0, 0, 0]
        back = adjacency_to_riemann(params, riemann_to_adjacency(params, structure_tensor(params).rho))
        assert (back == structure_tensor(params).rho).all()


def test_tensor_read_only():
    t = structure_tensor(SchemeParams("C", 2, 2)).rho
    with pytest.raises(ValueError):
        t[0, 0, 0] = 1
