"""Dual polar scheme parameters and exact Riemann-basis structure constants.

Powers of q are carried with doubled exponents so that the Hermitian
families (e = 3/2 and e = 1/2, q = r^2) stay in the integers:
q^{x/2} = b^{scale * x / 2}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .qnum import gauss_binom


class SchemeFamily(enum.Enum):
    C = "C"
    B = "B"
    D = "D"
    TWO_D = "2D"
    TWO_A_EVEN = "2A-even"
    TWO_A_ODD = "2A-odd"

    @property
    def two_e(self) -> int:
        return _TWO_E[self]

    @property
    def scale(self) -> int:
        """Exponent s with q = b^s (2 for the Hermitian families)."""
        return 2 if self in (SchemeFamily.TWO_A_EVEN, SchemeFamily.TWO_A_ODD) else 1

    @property
    def hermitian(self) -> bool:
        return self.scale == 2

    @classmethod
    def parse(cls, name: str | SchemeFamily) -> SchemeFamily:
        if isinstance(name, SchemeFamily):
            return name
        for fam in cls:
            if name in (fam.value, fam.name):
                return fam
        raise ValueError(
            f"unknown family {name!r}; expected one of "
            + ", ".join(f.value for f in cls)
        )


_TWO_E = {
    SchemeFamily.C: 2,
    SchemeFamily.B: 2,
    SchemeFamily.D: 0,
    SchemeFamily.TWO_D: 4,
    SchemeFamily.TWO_A_EVEN: 3,
    SchemeFamily.TWO_A_ODD: 1,
}


@dataclass(frozen=True)
class SchemeParams:
    """A dual polar scheme of rank ``d`` over base ``b``.

    ``b`` is q for C, B, D, 2D and r (with q = r^2) for the Hermitian
    families. It need not be a prime power: every structure constant is a
    polynomial in b.
    """

    family: SchemeFamily
    d: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "family", SchemeFamily.parse(self.family))
        if self.d < 1:
            raise ValueError(f"rank d must be >= 1, got {self.d}")
        if self.b < 2:
            raise ValueError(f"base b must be >= 2, got {self.b}")

    @property
    def scale(self) -> int:
        return self.family.scale

    @property
    def two_e(self) -> int:
        return self.family.two_e

    @property
    def q(self) -> int:
        return self.b**self.scale

    def __str__(self):
        fam = self.family.value
        return f"[{fam}_{self.d}({self.b})]"


def q_power(params: SchemeParams, x_times_2: int) -> int:
    """q^{x_times_2 / 2} as an exact integer."""
    e = params.scale * x_times_2
    if e % 2:
        raise ValueError(
            f"q^({x_times_2}/2) is not an integer power of b for {params}"
        )
    if e < 0:
        raise ValueError("negative exponents are not integral")
    return params.b ** (e // 2)


def rho(params: SchemeParams, s: int, t: int, u: int) -> int:
    """Structure constant rho_{s,t}^u of the Riemann basis (product form).

    rho = [d-u, s-u]_q [d-s, t-u]_q prod_{l < d-s-t+u} (q^u + q^{e+l})
    """
    d = params.d
    if not (0 <= s <= d and 0 <= t <= d and 0 <= u <= d):
        raise IndexError(f"indices ({s},{t},{u}) out of range for d={d}")
    if u > min(s, t):
        return 0
    k = d - s - t + u
    if k < 0:
        return 0
    q = params.q
    val = gauss_binom(d - u, s - u, q) * gauss_binom(d - s, t - u, q)
    if val == 0:
        return 0
    qu = q_power(params, 2 * u)
    for l in range(k):
        val *= qu + q_power(params, params.two_e + 2 * l)
    return val


def rho_semilattice(params: SchemeParams, s: int, t: int, u: int) -> int:
    """rho_{s,t}^u from the regular-semilattice parameters mu, nu', pi.

    Independent of :func:`rho`; used as a cross-check.
    """
    d = params.d
    q = params.q

    def mu(u_, s_):
        return gauss_binom(d - u_, s_ - u_, q)

    def nu_prime(j, u_):
        return (-1) ** (u_ - j) * q ** ((u_ - j) * (u_ - j - 1) // 2) * gauss_binom(u_, j, q)

    def pi(j, s_, t_):
        total = 0
        for i in range(d + 1):
            h = d - i
            total += (
                gauss_binom(d - s_, h, q)
                * q_power(params, params.two_e * h + h * (h - 1))
                * gauss_binom(i - s_ + j, t_, q)
            )
        return total

    return mu(u, s) * sum(nu_prime(j, u) * pi(j, s, t) for j in range(u + 1))


@dataclass(frozen=True, eq=False)
class StructureTensor:
    """All rho_{s,t}^u, stored as an object array indexed [s, t, u]."""

    params: SchemeParams
    rho: np.ndarray

    @property
    def d(self) -> int:
        return self.params.d

    def __getitem__(self, idx):
        return self.rho[idx]

    def reduce(self, p: int) -> np.ndarray:
        return np.array(
            [[[int(v) % p for v in row] for row in plane] for plane in self.rho],
            dtype=np.int64,
        )


@lru_cache(maxsize=256)
def structure_tensor(params: SchemeParams) -> StructureTensor:
    n = params.d + 1
    arr = np.zeros((n, n, n), dtype=object)
    for s in range(n):
        for t in range(s, n):
            for u in range(min(s, t) + 1):
                v = rho(params, s, t, u)
                arr[s, t, u] = v
                arr[t, s, u] = v
    arr.flags.writeable = False
    return StructureTensor(params, arr)


def g_matrix(params: SchemeParams, s: int) -> np.ndarray:
    """Lower-triangular (G_s)_{t,u} = rho_{s,t}^u, exact object array."""
    return structure_tensor(params).rho[s].copy()


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.dot(np.asarray(a, dtype=object), np.asarray(b, dtype=object))


@dataclass(frozen=True, eq=False)
class BaseChange:
    """C_i = sum_j forward[i, j] A_{d-j} with forward[i, j] = [j, i]_q."""

    params: SchemeParams
    forward: np.ndarray
    inverse: np.ndarray

    @cached_property
    def c_from_a(self) -> np.ndarray:
        """T with C_i = sum_k T[i, k] A_k."""
        return self.forward[:, ::-1]

    @cached_property
    def a_from_c(self) -> np.ndarray:
        """T^{-1} with A_k = sum_i T^{-1}[k, i] C_i."""
        return self.inverse[::-1, :]


def _unit_upper_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    inv = np.zeros((n, n), dtype=object)
    for col in range(n):
        # back substitution for m x = e_col
        x = [0] * n
        for i in range(n - 1, -1, -1):
            acc = 1 if i == col else 0
            for j in range(i + 1, n):
                acc -= m[i, j] * x[j]
            diag = m[i, i]
            quo, rem = divmod(acc, diag)
            if rem:
                raise ArithmeticError("inexact division in base-change inverse")
            x[i] = quo
        inv[:, col] = x
    return inv


@lru_cache(maxsize=256)
def riemann_base_change(params: SchemeParams) -> BaseChange:
    n = params.d + 1
    q = params.q
    fwd = np.zeros((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            fwd[i, j] = gauss_binom(j, i, q)
    inv = _unit_upper_inverse(fwd)
    if not (exact_matmul(fwd, inv) == np.eye(n, dtype=int)).all():
        raise ArithmeticError("base-change inverse failed round trip")
    return BaseChange(params, fwd, inv)


def riemann_to_adjacency(params: SchemeParams, rho_arr: np.ndarray) -> np.ndarray:
    """Conjugate Riemann constants rho[a, b, c] to adjacency p[i, j, k]."""
    bc = riemann_base_change(params)
    t, tinv = bc.c_from_a, bc.a_from_c
    # p_ij^k = sum_{a,b,c} Tinv[i,a] Tinv[j,b] rho[a,b,c] T[c,k]
    x = np.tensordot(rho_arr, t, axes=([2], [0]))
    x = np.tensordot(tinv, x, axes=([1], [0]))
    x = np.tensordot(tinv, x, axes=([1], [1]))
    return x.transpose(1, 0, 2)


def adjacency_to_riemann(params: SchemeParams, p_arr: np.ndarray) -> np.ndarray:
    """Inverse of :func:`riemann_to_adjacency`."""
    bc = riemann_base_change(params)
    t, tinv = bc.c_from_a, bc.a_from_c
    x = np.tensordot(p_arr, tinv, axes=([2], [0]))
    x = np.tensordot(t, x, axes=([1], [0]))
    x = np.tensordot(t, x, axes=([1], [1]))
    return x.transpose(1, 0, 2)


def adjacency_intersection_numbers(params: SchemeParams) -> np.ndarray:
    """Intersection numbers p_{ij}^k of the adjacency basis, indexed [i, j, k]."""
    p_arr = riemann_to_adjacency(params, structure_tensor(params).rho)
    for v in p_arr.flat:
        if not isinstance(v, int) or v < 0:
            raise ArithmeticError(f"bad intersection number {v!r} for {params}")
    return p_arr
