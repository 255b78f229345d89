"""Exact integer q-analogs: Gaussian binomials, q-Pochhammer products, Lucas binomials.

Everything here works on Python ints, so there is no overflow at any size.
Residues mod p are returned as plain ints in ``range(p)``.
"""

from functools import lru_cache
from math import comb


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")
    return p


@lru_cache(maxsize=None)
def gauss_binom(n: int, k: int, q: int) -> int:
    """Gaussian binomial coefficient [n, k]_q evaluated at an integer q.

    Total function: 0 whenever k < 0 or k > n (this also covers negative n).
    """
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    if q in (0, 1, -1):
        # q-Pascal recurrence; the product formula divides by zero here
        return gauss_binom(n - 1, k - 1, q) + q**k * gauss_binom(n - 1, k, q)
    k = min(k, n - k)
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    quo, rem = divmod(num, den)
    assert rem == 0, f"inexact Gaussian quotient for [{n},{k}]_{q}"
    return quo


def q_pochhammer(a: int, q: int, k: int) -> int:
    """(a; q)_k = prod_{l<k} (1 - a q^l)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1
    for l in range(k):
        out *= 1 - a * q**l
    return out


def neg_q_pochhammer(z: int, q: int, m: int) -> int:
    """(-z; q)_m = prod_{l<m} (1 + z q^l)."""
    return q_pochhammer(-z, q, m)


def binom_mod_p(m: int, n: int, p: int) -> int:
    """C(m, n) mod p via base-p digits (Lucas)."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    out = 1
    while m or n:
        m, mi = divmod(m, p)
        n, ni = divmod(n, p)
        if ni > mi:
            return 0
        out = out * comb(mi, ni) % p
    return out % p


def factorial_mod(k: int, p: int) -> int:
    if not 0 <= k < p:
        raise ValueError(f"factorial_mod needs 0 <= k < p, got k={k}, p={p}")
    out = 1
    for i in range(2, k + 1):
        out = out * i % p
    return out % p
