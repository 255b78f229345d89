"""Weighted truncated polynomial rings P/W_d and the explicit maps identifying
them with local modular adjacency algebras of dual polar schemes.

P/W_d is F_p[X_1, X_2, ...]/(X_i^p) modulo all monomials of weight > d, where
wt(X_i) = p^(i-1). Its basis is indexed by the base-p digit vectors of
0..d, so dim P/W_d = d + 1.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .algebra import (
    AlgebraMap,
    AlgebraTable,
    QuotientTable,
    inverse_map,
    permuted_map,
    quotient_table,
    rank_mod_p,
    tensor_map,
    tensor_table,
    unit_table,
)
from .modular import NotLocalError, is_local, scheme_table
from .qnum import check_prime, factorial_mod
from .scheme import SchemeFamily, SchemeParams

Monomial = tuple


def n_variables(p: int, d: int) -> int:
    """Variables needed to reach weight d: floor(log_p d) + 1, or 0 for d = 0."""
    l = 0
    while d >= p**l and d > 0:
        l += 1
    return l


def weight(m: Monomial, p: int) -> int:
    return sum(k * p**i for i, k in enumerate(m))


def digits(w: int, p: int, l: int) -> Monomial:
    out = []
    for _ in range(l):
        w, r = divmod(w, p)
        out.append(r)
    if w:
        raise ValueError("weight does not fit in the given number of variables")
    return tuple(out)


def monomial_str(m: Monomial) -> str:
    parts = []
    for i, k in enumerate(m):
        if k == 1:
            parts.append(f"X{i + 1}")
        elif k > 1:
            parts.append(f"X{i + 1}^{k}")
    return "*".join(parts) or "1"


def ring_basis(p: int, d: int) -> list:
    """Monomials of weight <= d with exponents < p, in increasing weight."""
    if d < 0:
        raise ValueError("d must be >= 0")
    l = n_variables(p, d)
    return [digits(w, p, l) for w in range(d + 1)]


def ring_multiply(p: int, d: int, m1: Monomial, m2: Monomial) -> Optional[Monomial]:
    """Product of two basis monomials, or None when it vanishes in P/W_d."""
    prod = tuple(a + b for a, b in zip(m1, m2))
    if any(k >= p for k in prod) or weight(prod, p) > d:
        return None
    return prod


def ring_table(p: int, d: int) -> AlgebraTable:
    check_prime(p)
    basis = ring_basis(p, d)
    n = len(basis)
    c = np.zeros((n, n, n), dtype=np.int64)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            prod = ring_multiply(p, d, a, b)
            if prod is not None:
                # weight of a basis monomial is its index
                c[i, j, weight(prod, p)] = 1
    return AlgebraTable(p, [monomial_str(m) for m in basis], c)


def socle_monomial(p: int, d: int) -> Monomial:
    """Y_d: the basis monomial of top weight d."""
    return digits(d, p, n_variables(p, d))


def weighted_ring_map(params: SchemeParams, p: int) -> AlgebraMap:
    """P/W_d -> F X (mod p): monomial of weight w with exponents (k_j)
    goes to (prod_j k_j!) C_{d-w}."""
    if not is_local(params, p):
        raise NotLocalError(f"{params} is not local in characteristic {p}")
    d = params.d
    src = ring_table(p, d)
    tgt = scheme_table(params, p)
    images = []
    for m in ring_basis(p, d):
        coeff = 1
        for k in m:
            coeff = coeff * factorial_mod(k, p) % p
        images.append((coeff, d - weight(m, p)))
    return permuted_map(src, tgt, images)


def hermitian_params(d: int, r: int) -> SchemeParams:
    return SchemeParams(SchemeFamily.TWO_A_EVEN, d, r)


def theorem1_map(d: int, r: int, p: int) -> AlgebraMap:
    """Candidate isomorphism P/W_d -> F A_d for the Hermitian scheme on
    F_{r^2}^{2d+1}; d = 0 gives the trivial one-dimensional map."""
    if p == 2 or r % p != p - 1:
        raise NotLocalError(f"need odd p and r = -1 mod p (r={r}, p={p})")
    if d == 0:
        u = unit_table(p)
        return AlgebraMap(ring_table(p, 0), u, np.ones((1, 1), dtype=np.int64))
    return weighted_ring_map(hermitian_params(d, r), p)


def small_one_check(r: int, p: int) -> bool:
    """F A_{p-1} is F[X]/(X^p) with X = C_{p-2}: the powers 1, X, ..., X^{p-1}
    are independent and X^p = 0."""
    if r % p != p - 1:
        raise NotLocalError(f"r={r} is not -1 mod {p}")
    t = scheme_table(hermitian_params(p - 1, r), p)
    x = t.basis_vector(p - 2)
    powers = [t.power(x, m) for m in range(p)]
    return rank_mod_p(np.array(powers), p) == p and not t.power(x, p).any()


def nilpotency_of_generator(r: int, p: int) -> Optional[int]:
    t = scheme_table(hermitian_params(p - 1, r), p)
    return t.nilpotency_index(t.basis_vector(p - 2))


def properties_of_A_defect(l: int, r: int, p: int):
    if r % p != p - 1:
        raise NotLocalError(f"r={r} is not -1 mod {p}")
    d = p**l - 1
    t = scheme_table(hermitian_params(d, r), p)
    for i in range(l):
        x = t.basis_vector(d - p**i)
        for m in range(1, p):
            lhs = t.power(x, m)
            rhs = factorial_mod(m, p) * t.basis_vector(d - m * p**i) % p
            if (lhs != rhs).any():
                return ("power", i, m)
    for i in range(l):
        for j in range(l):
            if i == j:
                continue
            for a in range(p):
                for b in range(p):
                    lhs = t.mul(t.basis_vector(d - a * p**i), t.basis_vector(d - b * p**j))
                    rhs = t.basis_vector(d - (a * p**i + b * p**j))
                    if (lhs != rhs).any():
                        return ("product", i, j, a, b)
    return None


def properties_of_A_check(l: int, r: int, p: int) -> bool:
    return properties_of_A_defect(l, r, p) is None


def _hatted_table(d: int, q: int, p: int) -> AlgebraTable:
    return unit_table(p) if d == 0 else scheme_table(hermitian_params(d, q), p)


def theorem2_map(d_prime: int, q: int, p: int) -> AlgebraMap:
    """C_{2s+a} -> C_s (x) C_a from F C_{2d'+1} to F A_{d'} (x) F A_1,
    hatted algebras built on the Hermitian scheme with r = q."""
    if p == 2 or q % p != p - 1:
        raise NotLocalError(f"need odd p and q = -1 mod p (q={q}, p={p})")
    src = scheme_table(SchemeParams(SchemeFamily.C, 2 * d_prime + 1, q), p)
    tgt = tensor_table(_hatted_table(d_prime, q, p), _hatted_table(1, q, p))
    # (s, a) flattens to 2s + a, so the map is the identity matrix
    return AlgebraMap(src, tgt, np.eye(src.dim, dtype=np.int64))


def theorem2_presentation_map(d_prime: int, q: int, p: int) -> AlgebraMap:
    """F C_{2d'+1} -> P/W_{d'} (x) P/W_1, composing :func:`theorem2_map`
    with the inverses of the weighted-ring maps on each factor."""
    f = theorem2_map(d_prime, q, p)
    inv_hi = inverse_map(theorem1_map(d_prime, q, p))
    inv_lo = inverse_map(theorem1_map(1, q, p))
    g = tensor_map(inv_hi, inv_lo, source=f.target)
    return f.then(g)


def d_quotient(d_prime: int, q: int, p: int) -> QuotientTable:
    """(P/W_{d'} (x) P/W_1) / (Y_{d'} (x) Y_1)."""
    t = tensor_table(ring_table(p, d_prime), ring_table(p, 1))
    # Y_w has index w in ring_table(p, w)
    gen = t.basis_vector(d_prime * 2 + 1)
    return quotient_table(t, [gen])


def d_quotient_map(d_prime: int, q: int, p: int) -> AlgebraMap:
    """F D_{2d'} -> (P/W_{d'} (x) P/W_1)/(Y_{d'} (x) Y_1) induced by C_S -> D_{S-1}."""
    if d_prime < 1:
        raise ValueError("d' must be >= 1")
    phi = theorem2_presentation_map(d_prime, q, p)
    quo = d_quotient(d_prime, q, p)
    composite = phi.then(quo.projection)
    if composite(phi.source.basis_vector(0)).any():
        raise ArithmeticError("C_0 does not map into the socle ideal")
    src = scheme_table(SchemeParams(SchemeFamily.D, 2 * d_prime, q), p)
    return AlgebraMap(src, quo.table, composite.matrix[:, 1:])


def p2_remark_map(params: SchemeParams) -> AlgebraMap:
    """P/W_d (p = 2) -> F X mod 2 for odd base b."""
    return weighted_ring_map(params, 2)
