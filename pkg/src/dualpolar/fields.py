"""Small finite fields as lookup tables.

Elements of F_{p^k} are the ints 0..q-1, read as base-p digit vectors of
polynomial coefficients (lowest degree first) modulo a fixed irreducible.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .qnum import is_prime

# coefficient lists, constant term first, monic
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),        # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),     # x^3 + x + 1
    9: (3, (1, 0, 1)),        # x^2 + 1
    16: (2, (1, 1, 0, 0, 1)),  # x^4 + x + 1
}

SUPPORTED = (2, 3, 4, 5, 7, 8, 9, 16)


class SmallField:
    def __init__(self, q: int):
        if q not in SUPPORTED:
            raise ValueError(f"unsupported field order {q}; choose from {SUPPORTED}")
        self.q = q
        if is_prime(q):
            self.char, self.degree, self.modulus = q, 1, (0, 1)
        else:
            self.char, self.modulus = IRREDUCIBLE[q]
            self.degree = len(self.modulus) - 1
        self._build()
        self._check_axioms()

    def _digits(self, a):
        p = self.char
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _from_digits(self, ds):
        return sum(c * self.char**i for i, c in enumerate(ds))

    def _poly_mul(self, a, b):
        p, k = self.char, self.degree
        x, y = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                prod[i + j] = (prod[i + j] + xi * yj) % p
        # reduce by the monic modulus from the top
        for top in range(len(prod) - 1, k - 1, -1):
            c = prod[top]
            if c:
                for i, m in enumerate(self.modulus):
                    prod[top - k + i] = (prod[top - k + i] - c * m) % p
        return self._from_digits(prod[:k])

    def _build(self):
        q, p = self.q, self.char
        dig = [self._digits(a) for a in range(q)]
        self.add = np.array(
            [[self._from_digits([(x + y) % p for x, y in zip(dig[a], dig[b])])
              for b in range(q)] for a in range(q)],
            dtype=np.int64,
        )
        self.mul = np.array(
            [[self._poly_mul(a, b) for b in range(q)] for a in range(q)],
            dtype=np.int64,
        )
        self.neg = np.array([int(np.argwhere(self.add[a] == 0)[0, 0]) for a in range(q)])
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.argwhere(self.mul[a] == 1)[0, 0])

    def _check_axioms(self):
        add, mul, q = self.add, self.mul, self.q
        r = np.arange(q)
        assert (add == add.T).all() and (mul == mul.T).all()
        assert (add[0] == r).all() and (mul[1] == r).all() and (mul[0] == 0).all()
        a, b, c = np.meshgrid(r, r, r, indexing="ij")
        assert (add[add[a, b], c] == add[a, add[b, c]]).all()
        assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
        assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()
        assert (add[r, self.neg] == 0).all()
        assert (mul[r[1:], self.inv[1:]] == 1).all()

    def power(self, a, e: int):
        out = np.ones_like(np.asarray(a))
        base = np.asarray(a)
        for _ in range(e):
            out = self.mul[out, base]
        return out

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def __repr__(self):
        return f"SmallField({self.q})"


@lru_cache(maxsize=None)
def build_field(q: int) -> SmallField:
    return SmallField(q)


def irreducible_quadratic(field: SmallField):
    """(a, b) with x^2 + a x + b irreducible over the field; first in element order."""
    q = field.q
    xs = np.arange(q)
    for b in range(1, q):
        for a in range(q):
            vals = field.add[field.add[field.mul[xs, xs], field.mul[a, xs]], b]
            if (vals != 0).all():
                return a, b
    raise ArithmeticError("no irreducible quadratic found")
