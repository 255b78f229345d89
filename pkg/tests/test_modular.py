import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualpolar.modular import (
    HypothesesNotMet,
    NotLocalError,
    check_epi_A,
    check_isomorphic_condition,
    check_matrix_of_local,
    check_psi_epi,
    check_tensor_decomposition,
    check_theorem2_congruence,
    diagonal_contributors,
    contributing_indices,
    is_local_closed_form,
    k_blocks,
    local_rho,
    locality_report,
    reduce_tensor,
    scheme_table,
)
from dualpolar.qnum import check_prime
from dualpolar.scheme import SchemeFamily, SchemeParams, q_power

FAMILIES = [f.value for f in SchemeFamily]
ODD = (3, 5, 7, 11, 13)


def test_reduce_examples():
    assert reduce_tensor(SchemeParams("C", 1, 2), 3).rho_mod[0, 0, 0] == 0
    for fam in FAMILIES:
        m = reduce_tensor(SchemeParams(fam, 4, 5), 3).rho_mod
        assert m[4, 4, 4] == 1


@pytest.mark.parametrize("p", (2, 3, 5))
def test_reduced_table_is_algebra(p):
    for fam in FAMILIES:
        for d in range(1, 6):
            t = scheme_table(SchemeParams(fam, d, 4), p)
            assert t.is_commutative() and t.is_associative() and t.acts_as_identity()


def test_block_examples():
    assert k_blocks(SchemeParams("C", 2, 3), 5) == 2
    assert contributing_indices(SchemeParams("C", 2, 3), 5) == [1, 2]
    assert k_blocks(SchemeParams("C", 3, 2), 3) == 1
    assert k_blocks(SchemeParams("C", 3, 3), 3) >= 2
    for d in range(1, 10):
        assert k_blocks(SchemeParams("2A-even", d, 4), 5) == 1
    with pytest.raises(ValueError):
        k_blocks(SchemeParams("C", 2, 3), 4)


def test_closed_form_examples():
    assert is_local_closed_form(SchemeParams("C", 3, 2), 3) is True
    assert is_local_closed_form(SchemeParams("C", 2, 2), 3) is False
    assert is_local_closed_form(SchemeParams("D", 2, 2), 3) is True
    assert is_local_closed_form(SchemeParams("C", 3, 3), 3) is False
    assert is_local_closed_form(SchemeParams("C", 3, 3), 2) is None


@pytest.mark.parametrize("fam", FAMILIES)
def test_count_matches_diagonal(fam):
    for d in range(1, 13):
        for b in range(2, 10):
            for p in (2,) + ODD:
                params = SchemeParams(fam, d, b)
                assert contributing_indices(params, p) == diagonal_contributors(params, p)


@pytest.mark.parametrize("fam", FAMILIES)
def test_locality_biconditional_rank_two_and_up(fam):
    for d in range(2, 13):
        for b in range(2, 10):
            for p in ODD:
                if b % p == 0:
                    continue
                rep = locality_report(SchemeParams(fam, d, b), p)
                assert rep.is_local_by_count == rep.closed_form_verdict, (fam, d, b, p)


def test_rank_one_locality_is_divisibility_of_size():
    # span{I, J} with J^2 = |X| J is local exactly when p divides |X|
    for fam in FAMILIES:
        for b in range(2, 10):
            params = SchemeParams(fam, 1, b)
            size = 1 + q_power(params, params.two_e)
            for p in (2,) + ODD:
                assert (k_blocks(params, p) == 1) == (size % p == 0)


def test_rank_one_counterexamples_pinned():
    found = []
    for fam in FAMILIES:
        for b in range(2, 10):
            for p in ODD:
                if b % p == 0:
                    continue
                rep = locality_report(SchemeParams(fam, 1, b), p)
                if rep.is_local_by_count != rep.closed_form_verdict:
                    found.append((fam, b, p))
    assert found == [
        ("2D", 2, 5), ("2D", 3, 5), ("2D", 5, 13), ("2D", 7, 5), ("2D", 8, 5), ("2D", 8, 13),
        ("2A-even", 3, 7), ("2A-even", 4, 13), ("2A-even", 5, 7),
    ]


@pytest.mark.parametrize("fam", FAMILIES)
def test_p_divides_base_not_local(fam):
    for d in range(1, 11):
        for b in range(2, 10):
            for p in ODD:
                if b % p == 0:
                    assert k_blocks(SchemeParams(fam, d, b), p) >= 2


def test_two_point_scheme_local_in_characteristic_two():
    # D_1(q) is the 2-point scheme for every q, so J^2 = 2J vanishes mod 2
    assert k_blocks(SchemeParams("D", 1, 4), 2) == 1
    assert k_blocks(SchemeParams("D", 2, 4), 2) >= 2


@pytest.mark.parametrize("fam", FAMILIES)
def test_p2_odd_base_local(fam):
    for d in range(1, 11):
        for b in (3, 5, 7, 9):
            assert k_blocks(SchemeParams(fam, d, b), 2) == 1


def test_local_rho_examples():
    params = SchemeParams("2A-even", 2, 2)
    assert local_rho(params, 3, 1, 1, 0) == 2
    assert local_rho(params, 3, 2, 1, 1) == 1
    assert local_rho(SchemeParams("C", 3, 2), 3, 0, 0, 0) == 0
    with pytest.raises(NotLocalError):
        local_rho(SchemeParams("C", 2, 2), 3, 0, 0, 0)


def test_matrix_of_local_examples():
    assert check_matrix_of_local(SchemeParams("C", 3, 2), 3)
    assert check_matrix_of_local(SchemeParams("2A-even", 3, 2), 3)
    assert check_matrix_of_local(SchemeParams("D", 4, 2), 3)


@pytest.mark.parametrize("fam", FAMILIES)
def test_matrix_of_local_sweep(fam):
    for d in range(1, 11):
        for b in range(2, 10):
            for p in (3, 5, 7, 11):
                params = SchemeParams(fam, d, b)
                if k_blocks(params, p) == 1:
                    assert check_matrix_of_local(params, p), (fam, d, b, p)


def test_isomorphic_condition_examples():
    assert check_isomorphic_condition(SchemeParams("D", 4, 2), SchemeParams("2D", 4, 2), 3)
    assert check_isomorphic_condition(SchemeParams("2A-even", 3, 4), SchemeParams("2A-odd", 3, 4), 5)
    assert check_isomorphic_condition(SchemeParams("C", 3, 2), SchemeParams("C", 3, 5), 3)
    with pytest.raises(HypothesesNotMet):
        check_isomorphic_condition(SchemeParams("C", 3, 2), SchemeParams("C", 3, 4), 3)


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from(FAMILIES), st.sampled_from(FAMILIES),
    st.integers(1, 7), st.integers(2, 30), st.integers(0, 4), st.sampled_from(ODD),
)
def test_isomorphic_condition_property(f1, f2, d, b1, k, p):
    b2 = b1 + k * p
    a, c = SchemeParams(f1, d, b1), SchemeParams(f2, d, b2)
    try:
        assert check_isomorphic_condition(a, c, p)
    except HypothesesNotMet:
        pass


def test_satellite_examples():
    assert check_epi_A(2, 2, 3) and check_epi_A(4, 4, 5) and check_epi_A(1, 2, 3)
    assert check_tensor_decomposition(2, 2, 3) and check_tensor_decomposition(2, 4, 5)
    assert check_tensor_decomposition(1, 2, 3)
    assert check_theorem2_congruence(1, 2, 3) and check_theorem2_congruence(2, 2, 3)
    assert check_theorem2_congruence(3, 4, 5)
    assert check_psi_epi(3, 2, 3) and check_psi_epi(5, 2, 3) and check_psi_epi(3, 4, 5)


def test_residues_in_range():
    m = reduce_tensor(SchemeParams("C", 6, 9), 7).rho_mod
    assert m.min() >= 0 and m.max() < 7
    assert check_prime(7) == 7
