"""Mod-p structure: block counts, locality, and the congruences behind the
isomorphisms and epimorphisms between modular adjacency algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .algebra import AlgebraMap, AlgebraTable, homomorphism_defect, permuted_map
from .qnum import check_prime, gauss_binom
from .scheme import SchemeFamily, SchemeParams, q_power, structure_tensor


class NotLocalError(ValueError):
    """Raised when an operation needs a local modular adjacency algebra."""


class HypothesesNotMet(ValueError):
    """The congruence hypotheses of an isomorphism criterion fail."""


@dataclass(frozen=True, eq=False)
class ModTensor:
    params: SchemeParams
    p: int
    rho_mod: np.ndarray

    def table(self) -> AlgebraTable:
        """Algebra table on the Riemann basis C_0..C_d."""
        return AlgebraTable(
            self.p, [f"C{i}" for i in range(self.params.d + 1)], self.rho_mod
        )


@lru_cache(maxsize=512)
def reduce_tensor(params: SchemeParams, p: int) -> ModTensor:
    check_prime(p)
    arr = structure_tensor(params).reduce(p)
    arr.flags.writeable = False
    return ModTensor(params, p, arr)


def scheme_table(params: SchemeParams, p: int) -> AlgebraTable:
    return reduce_tensor(params, p).table()


def block_factors(params: SchemeParams, i: int) -> list:
    """Factors q^i + q^{e+l}, l = 0..d-i-1, of rho_{i,i}^i."""
    return [
        q_power(params, 2 * i) + q_power(params, params.two_e + 2 * l)
        for l in range(params.d - i)
    ]


@dataclass
class LocalityReport:
    params: SchemeParams
    p: int
    k_blocks: int
    contributing_indices: list
    closed_form_verdict: Optional[bool]
    diagonal_indices: list = field(default_factory=list)

    @property
    def is_local_by_count(self) -> bool:
        return self.k_blocks == 1


def contributing_indices(params: SchemeParams, p: int) -> list:
    out = []
    for i in range(params.d + 1):
        if all(f % p for f in block_factors(params, i)):
            out.append(i)
    return out


def k_blocks(params: SchemeParams, p: int) -> int:
    """Number of blocks of the modular adjacency algebra in characteristic p."""
    check_prime(p)
    return len(contributing_indices(params, p))


def diagonal_contributors(params: SchemeParams, p: int) -> list:
    """Indices i with p not dividing the exact rho_{i,i}^i."""
    rho = structure_tensor(params).rho
    return [i for i in range(params.d + 1) if rho[i, i, i] % p]


def is_local_closed_form(params: SchemeParams, p: int) -> Optional[bool]:
    """Locality by the closed-form criterion; ``None`` for p = 2."""
    check_prime(p)
    if p == 2:
        return None
    if params.b % p == 0:
        return False
    minus_one = params.b % p == p - 1
    fam = params.family
    if fam in (SchemeFamily.C, SchemeFamily.B):
        return minus_one and params.d % 2 == 1
    if fam in (SchemeFamily.D, SchemeFamily.TWO_D):
        return minus_one and params.d % 2 == 0
    return minus_one


def locality_report(params: SchemeParams, p: int) -> LocalityReport:
    idx = contributing_indices(params, p)
    return LocalityReport(
        params,
        p,
        len(idx),
        idx,
        is_local_closed_form(params, p),
        diagonal_contributors(params, p),
    )


def is_local(params: SchemeParams, p: int) -> bool:
    return k_blocks(params, p) == 1


def _require_local(params: SchemeParams, p: int):
    if not is_local(params, p):
        raise NotLocalError(
            f"{params} is not local in characteristic {p} "
            f"({k_blocks(params, p)} blocks)"
        )


def local_rho(params: SchemeParams, p: int, s: int, t: int, u: int) -> int:
    """rho_{s,t}^u mod p in the local case: [d-u, s-u]_q if d-s = t-u, else 0."""
    _require_local(params, p)
    d = params.d
    if d - s != t - u:
        return 0
    return gauss_binom(d - u, s - u, params.q) % p


def local_tensor(params: SchemeParams, p: int) -> np.ndarray:
    _require_local(params, p)
    d = params.d
    out = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for s in range(d + 1):
        for u in range(d + 1):
            t = d - s + u
            if t <= d:
                out[s, t, u] = gauss_binom(d - u, s - u, params.q) % p
    return out


def matrix_of_local_defect(params: SchemeParams, p: int):
    """First (s, t, u, actual, closed_form) disagreement, or None."""
    actual = reduce_tensor(params, p).rho_mod
    expected = local_tensor(params, p)
    bad = np.argwhere(actual != expected)
    if len(bad) == 0:
        return None
    s, t, u = (int(x) for x in bad[0])
    return (s, t, u, int(actual[s, t, u]), int(expected[s, t, u]))


def check_matrix_of_local(params: SchemeParams, p: int) -> bool:
    return matrix_of_local_defect(params, p) is None


def isomorphic_hypotheses(params1: SchemeParams, params2: SchemeParams, p: int) -> bool:
    """q1 = q2 and q1^e1 = q2^e2 mod p, with p not dividing either base."""
    if params1.d != params2.d:
        return False
    if params1.b % p == 0 or params2.b % p == 0:
        return False
    if (params1.q - params2.q) % p:
        return False
    qe1 = q_power(params1, params1.two_e)
    qe2 = q_power(params2, params2.two_e)
    return (qe1 - qe2) % p == 0


def check_isomorphic_condition(params1: SchemeParams, params2: SchemeParams, p: int) -> bool:
    """Whether C_r -> C_r' identifies the two mod-p algebras.

    Raises :class:`HypothesesNotMet` when the congruence hypotheses fail.
    """
    check_prime(p)
    if not isomorphic_hypotheses(params1, params2, p):
        raise HypothesesNotMet(f"{params1} and {params2} at p={p}")
    a = reduce_tensor(params1, p).rho_mod
    b = reduce_tensor(params2, p).rho_mod
    return bool((a == b).all())


def shift_map(source: SchemeParams, target: SchemeParams, p: int) -> AlgebraMap:
    """C_s -> C'_{s-1} with C'_{-1} = 0 (needs target.d == source.d - 1)."""
    if target.d != source.d - 1:
        raise ValueError("shift map needs ranks d and d-1")
    src = scheme_table(source, p)
    tgt = scheme_table(target, p)
    images = [None] + [(1, s - 1) for s in range(1, source.d + 1)]
    return permuted_map(src, tgt, images)


def epi_A_defect(d: int, r: int, p: int):
    big = SchemeParams(SchemeFamily.TWO_A_EVEN, d + 1, r)
    small = SchemeParams(SchemeFamily.TWO_A_EVEN, d, r)
    _require_local(small, p)
    _require_local(big, p)
    rb = reduce_tensor(big, p).rho_mod
    rs = reduce_tensor(small, p).rho_mod
    if not (rb[1:, 1:, 1:] == rs).all():
        s, t, u = (int(x) + 1 for x in np.argwhere(rb[1:, 1:, 1:] != rs)[0])
        return ("congruence", (s, t, u))
    f = shift_map(big, small, p)
    bad = homomorphism_defect(f)
    if bad is not None:
        return ("homomorphism", bad)
    if not f.is_surjective():
        return ("surjective", f.rank())
    return None


def check_epi_A(d: int, r: int, p: int) -> bool:
    """C_s -> C_{s-1} is an epimorphism F A_{d+1} -> F A_d (Hermitian, 2d+1)."""
    return epi_A_defect(d, r, p) is None


def tensor_decomposition_defect(l: int, r: int, p: int):
    if l < 1:
        raise ValueError("l must be >= 1")
    if r % p != p - 1:
        raise NotLocalError(f"r={r} is not -1 mod {p}")
    if l == 1:
        return None
    big = reduce_tensor(SchemeParams(SchemeFamily.TWO_A_EVEN, p**l - 1, r), p).rho_mod
    hi = reduce_tensor(SchemeParams(SchemeFamily.TWO_A_EVEN, p ** (l - 1) - 1, r), p).rho_mod
    lo = reduce_tensor(SchemeParams(SchemeFamily.TWO_A_EVEN, p - 1, r), p).rho_mod
    # index p*s + alpha  <->  (s, alpha)
    expected = np.einsum("stu,abc->satbuc", hi, lo) % p
    n = p**l
    expected = expected.reshape(n, n, n)
    bad = np.argwhere(big != expected)
    if len(bad):
        s, t, u = (int(x) for x in bad[0])
        return (s, t, u, int(big[s, t, u]), int(expected[s, t, u]))
    return None


def check_tensor_decomposition(l: int, r: int, p: int) -> bool:
    """rho^{p^l-1}_{ps+a, pt+b, pu+c} = rho^{p^{l-1}-1}_{s,t,u} rho^{p-1}_{a,b,c} mod p."""
    return tensor_decomposition_defect(l, r, p) is None


def theorem2_defect(d_prime: int, q: int, p: int):
    if p == 2 or q % p != p - 1:
        raise NotLocalError(f"need odd p and q = -1 mod p (q={q}, p={p})")
    big = reduce_tensor(SchemeParams(SchemeFamily.C, 2 * d_prime + 1, q), p).rho_mod
    if d_prime == 0:
        hi = np.ones((1, 1, 1), dtype=np.int64)
    else:
        hi = reduce_tensor(SchemeParams(SchemeFamily.TWO_A_EVEN, d_prime, q), p).rho_mod
    lo = reduce_tensor(SchemeParams(SchemeFamily.TWO_A_EVEN, 1, q), p).rho_mod
    n = 2 * d_prime + 2
    expected = (np.einsum("stu,abc->satbuc", hi, lo) % p).reshape(n, n, n)
    bad = np.argwhere(big != expected)
    if len(bad):
        s, t, u = (int(x) for x in bad[0])
        return (s, t, u, int(big[s, t, u]), int(expected[s, t, u]))
    return None


def check_theorem2_congruence(d_prime: int, q: int, p: int) -> bool:
    """rho^{C, 2d'+1}_{2s+a, 2t+b, 2u+c} = rho^{A, d'}_{s,t,u} rho^{A, 1}_{a,b,c} mod p."""
    return theorem2_defect(d_prime, q, p) is None


def psi_defect(d: int, q: int, p: int):
    c = SchemeParams(SchemeFamily.C, d, q)
    dd = SchemeParams(SchemeFamily.D, d - 1, q)
    _require_local(c, p)
    f = shift_map(c, dd, p)
    bad = homomorphism_defect(f)
    if bad is not None:
        return ("homomorphism", bad)
    if not f.is_surjective():
        return ("surjective", f.rank())
    ker = f.kernel()
    expected = f.source.basis_vector(0)
    if ker.shape[0] != 1 or not (ker[0] == expected).all():
        return ("kernel", ker.tolist())
    return None


def check_psi_epi(d: int, q: int, p: int) -> bool:
    """C_s -> D_{s-1} is an epimorphism F C_d -> F D_{d-1} with kernel span(C_0)."""
    return psi_defect(d, q, p) is None
