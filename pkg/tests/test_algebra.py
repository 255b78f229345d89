import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualpolar.algebra import (
    AlgebraError,
    AlgebraMap,
    AlgebraTable,
    homomorphism_defect,
    inverse_map,
    inverse_mod_p,
    is_isomorphism,
    nullspace_mod_p,
    permuted_map,
    quotient_table,
    rank_mod_p,
    tensor_map,
    tensor_table,
    unit_table,
)
from dualpolar.presentations import ring_table


def truncated_poly(p, n):
    """F_p[X]/(X^n) on 1, X, ..., X^{n-1}."""
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n - i):
            c[i, j, i + j] = 1
    return AlgebraTable(p, [f"X^{i}" for i in range(n)], c)


def test_rank_and_nullspace():
    m = np.array([[1, 2], [2, 4]])
    assert rank_mod_p(m, 3) == 1
    ns = nullspace_mod_p(m, 3)
    assert ns.shape == (1, 2)
    assert not (m @ ns[0] % 3).any()
    assert rank_mod_p(np.eye(3, dtype=np.int64), 5) == 3


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.data())
def test_inverse_mod_p(p, n, data):
    entries = data.draw(st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n))
    m = np.array(entries, dtype=np.int64).reshape(n, n)
    if rank_mod_p(m, p) < n:
        with pytest.raises(AlgebraError):
            inverse_mod_p(m, p)
    else:
        assert (m @ inverse_mod_p(m, p) % p == np.eye(n, dtype=np.int64)).all()


def test_table_basics():
    t = truncated_poly(3, 3)
    assert t.dim == 3
    assert t.is_commutative() and t.is_associative() and t.acts_as_identity()
    assert t.is_local()
    assert t.nilpotency_index(t.basis_vector(1)) == 3
    assert t.nilpotency_index(t.identity) is None
    with pytest.raises(AlgebraError):
        AlgebraTable(3, ["a", "b"], np.zeros((2, 2, 2)))


def test_single_variable_ring_is_truncated_poly():
    assert (ring_table(3, 2).constants == truncated_poly(3, 3).constants).all()


def test_tensor_with_unit():
    t = truncated_poly(5, 4)
    u = tensor_table(t, unit_table(5))
    assert u.dim == t.dim
    assert (u.constants == t.constants).all()
    assert u.labels[1] == ("X^1", "1")


def test_tensor_dimension_and_axioms():
    t = tensor_table(truncated_poly(3, 3), truncated_poly(3, 2))
    assert t.dim == 6
    assert t.is_commutative() and t.is_associative() and t.acts_as_identity()
    with pytest.raises(AlgebraError):
        tensor_table(truncated_poly(3, 2), truncated_poly(5, 2))


def test_quotient_by_zero_ideal():
    t = truncated_poly(3, 3)
    q = quotient_table(t, [])
    assert (q.table.constants == t.constants).all()


def test_quotient_by_socle():
    t = tensor_table(ring_table(3, 1), ring_table(3, 1))
    q = quotient_table(t, [t.basis_vector(3)])
    assert q.table.dim == 3
    assert homomorphism_defect(q.projection) is None
    assert q.projection.is_surjective()


def test_quotient_rejects_non_ideal():
    t = truncated_poly(3, 3)
    with pytest.raises(AlgebraError, match="not an ideal"):
        quotient_table(t, [t.basis_vector(1)])


def test_identity_map_is_isomorphism():
    t = truncated_poly(7, 5)
    f = AlgebraMap(t, t, np.eye(5, dtype=np.int64))
    assert homomorphism_defect(f) is None and is_isomorphism(f)


def test_corrupted_map_gives_witness():
    t = truncated_poly(7, 5)
    m = np.eye(5, dtype=np.int64)[:, [0, 2, 1, 3, 4]]
    bad = homomorphism_defect(AlgebraMap(t, t, m))
    assert bad is not None
    (a, b), lhs, rhs = bad
    assert lhs != rhs


def test_unit_witness():
    t = truncated_poly(3, 2)
    bad = homomorphism_defect(permuted_map(t, t, [(2, 0), (1, 1)]))
    assert bad[0] == "unit"


def test_scaling_automorphism():
    # X -> 2X extends to an automorphism of F_5[X]/(X^4)
    t = truncated_poly(5, 4)
    f = permuted_map(t, t, [(pow(2, i, 5), i) for i in range(4)])
    assert is_isomorphism(f)
    g = inverse_map(f)
    assert (f.then(g).matrix == np.eye(4, dtype=np.int64)).all()
    h = tensor_map(f, f)
    assert homomorphism_defect(h) is None


def test_kernel_of_projection():
    t = truncated_poly(3, 3)
    f = permuted_map(t, unit_table(3), [(1, 0), None, None])
    assert homomorphism_defect(f) is None
    assert f.kernel().shape == (2, 3)
