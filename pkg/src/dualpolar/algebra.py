"""Finite-dimensional commutative algebras over F_p given by structure tables.

A table stores ``c[i, j, k]`` with ``e_i e_j = sum_k c[i, j, k] e_k``. Maps
are matrices whose column ``i`` holds the target coordinates of the image of
source basis element ``i``. Nothing about a map is assumed: linearity holds by
construction, multiplicativity is checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    return len(_row_reduce(mat, p)[1])


def _row_reduce(mat: np.ndarray, p: int):
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : mat @ x = 0 mod p}, one vector per row."""
    a, pivots = _row_reduce(mat, p)
    n = a.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for row, c in enumerate(pivots):
            v[c] = (-a[row, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


class AlgebraError(ValueError):
    pass


@dataclass(eq=False)
class AlgebraTable:
    p: int
    labels: list
    constants: np.ndarray
    identity: np.ndarray = field(default=None)

    def __post_init__(self):
        self.constants = np.asarray(self.constants, dtype=np.int64) % self.p
        n = len(self.labels)
        if self.constants.shape != (n, n, n):
            raise AlgebraError(
                f"constants shape {self.constants.shape} does not match {n} labels"
            )
        if self.identity is None:
            self.identity = self._find_identity()
        self.identity = np.asarray(self.identity, dtype=np.int64) % self.p

    @property
    def dim(self) -> int:
        return len(self.labels)

    def _find_identity(self) -> np.ndarray:
        for i in range(self.dim):
            if (self.constants[i] == np.eye(self.dim, dtype=np.int64)).all():
                v = np.zeros(self.dim, dtype=np.int64)
                v[i] = 1
                return v
        raise AlgebraError("no basis element acts as the identity")

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def index(self, label) -> int:
        return self.labels.index(label)

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.constants) % self.p

    def power(self, x: np.ndarray, m: int) -> np.ndarray:
        out = self.identity.copy()
        for _ in range(m):
            out = self.mul(out, x)
        return out

    def is_commutative(self) -> bool:
        return bool((self.constants == self.constants.transpose(1, 0, 2)).all())

    def is_associative(self) -> bool:
        c = self.constants
        # (e_i e_j) e_k vs e_i (e_j e_k)
        left = np.einsum("ijm,mkn->ijkn", c, c) % self.p
        right = np.einsum("jkm,imn->ijkn", c, c) % self.p
        return bool((left == right).all())

    def acts_as_identity(self) -> bool:
        n = self.dim
        left = np.einsum("i,ijk->jk", self.identity, self.constants) % self.p
        return bool((left == np.eye(n, dtype=np.int64)).all())

    def nilpotency_index(self, x: np.ndarray) -> Optional[int]:
        """Smallest m with x^m = 0, or None if x is not nilpotent."""
        y = np.asarray(x, dtype=np.int64) % self.p
        for m in range(1, self.dim + 2):
            if not y.any():
                return m
            y = self.mul(y, x)
        return None

    def is_local(self) -> bool:
        """True iff the non-identity basis elements are all nilpotent.

        Only meaningful for tables whose identity is a basis element and
        whose other basis elements span an ideal (true for every table built
        in this package).
        """
        idx = int(np.argmax(self.identity))
        return all(
            self.nilpotency_index(self.basis_vector(i)) is not None
            for i in range(self.dim)
            if i != idx
        )


def tensor_table(t1: AlgebraTable, t2: AlgebraTable) -> AlgebraTable:
    if t1.p != t2.p:
        raise AlgebraError("tensor product needs a common characteristic")
    n1, n2 = t1.dim, t2.dim
    c = np.einsum("ijk,abc->iajbkc", t1.constants, t2.constants)
    c = c.reshape(n1 * n2, n1 * n2, n1 * n2) % t1.p
    labels = [(a, b) for a in t1.labels for b in t2.labels]
    ident = np.kron(t1.identity, t2.identity) % t1.p
    return AlgebraTable(t1.p, labels, c, ident)


@dataclass(eq=False)
class QuotientTable:
    """Result of :func:`quotient_table` together with its projection."""

    table: AlgebraTable
    projection: "AlgebraMap"
    ideal_basis: np.ndarray


def quotient_table(t: AlgebraTable, generators: Sequence[np.ndarray]) -> QuotientTable:
    """Quotient of ``t`` by the span of ``generators``, which must be an ideal.

    The quotient basis is the set of source basis elements not used as
    pivots when row reducing the ideal basis.
    """
    p = t.p
    gens = np.array([np.asarray(g, dtype=np.int64) % p for g in generators],
                    dtype=np.int64).reshape(len(generators), t.dim)
    reduced, pivots = _row_reduce(gens, p) if len(gens) else (gens, [])
    ideal = reduced[: len(pivots)]
    for g in ideal:
        for i in range(t.dim):
            prod = t.mul(g, t.basis_vector(i))
            if prod.any() and rank_mod_p(np.vstack([ideal, prod]), p) > len(pivots):
                raise AlgebraError(
                    f"span of generators is not an ideal: "
                    f"{g.tolist()} * {t.labels[i]!r} escapes"
                )
    keep = [i for i in range(t.dim) if i not in pivots]

    def project(v):
        v = np.asarray(v, dtype=np.int64) % p
        for row, c in zip(ideal, pivots):
            if v[c]:
                v = (v - v[c] * row) % p
        return v[keep]

    proj = np.array([project(t.basis_vector(i)) for i in range(t.dim)],
                    dtype=np.int64).T.reshape(len(keep), t.dim)
    n = len(keep)
    c = np.zeros((n, n, n), dtype=np.int64)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            c[a, b] = project(t.constants[i, j])
    q = AlgebraTable(p, [t.labels[i] for i in keep], c, project(t.identity))
    return QuotientTable(q, AlgebraMap(t, q, proj), ideal)


@dataclass(eq=False)
class AlgebraMap:
    source: AlgebraTable
    target: AlgebraTable
    matrix: np.ndarray

    def __post_init__(self):
        if self.source.p != self.target.p:
            raise AlgebraError("source and target characteristics differ")
        self.matrix = np.asarray(self.matrix, dtype=np.int64) % self.source.p
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise AlgebraError(f"map matrix has shape {self.matrix.shape}")

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=np.int64) % self.source.p

    def then(self, other: "AlgebraMap") -> "AlgebraMap":
        """Composite ``other o self``."""
        return AlgebraMap(self.source, other.target, other.matrix @ self.matrix)

    def rank(self) -> int:
        return rank_mod_p(self.matrix, self.source.p)

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim == self.rank()

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def kernel(self) -> np.ndarray:
        return nullspace_mod_p(self.matrix, self.source.p)


def homomorphism_defect(f: AlgebraMap):
    """First witness against f being a unital algebra homomorphism, else None.

    Witness is ``("unit", image_of_one)`` or ``((i, j), f(e_i e_j), f(e_i) f(e_j))``
    with source labels for i and j.
    """
    p = f.source.p
    m = f.matrix
    one = f(f.source.identity)
    if not (one == f.target.identity).all():
        return ("unit", one.tolist())
    lhs = np.einsum("ka,ija->ijk", m, f.source.constants) % p
    rhs = np.einsum("ai,bj,abk->ijk", m, m, f.target.constants) % p
    bad = np.argwhere((lhs != rhs).any(axis=2))
    if len(bad) == 0:
        return None
    i, j = (int(x) for x in bad[0])
    return (
        (f.source.labels[i], f.source.labels[j]),
        lhs[i, j].tolist(),
        rhs[i, j].tolist(),
    )


def is_homomorphism(f: AlgebraMap) -> bool:
    return homomorphism_defect(f) is None


def is_isomorphism(f: AlgebraMap) -> bool:
    return f.is_bijective() and is_homomorphism(f)


def permuted_map(source: AlgebraTable, target: AlgebraTable, images: Sequence) -> AlgebraMap:
    """Map sending source basis i to ``images[i]``: a target vector or a
    ``(coefficient, target_index)`` pair; ``None`` maps to zero."""
    m = np.zeros((target.dim, source.dim), dtype=np.int64)
    for i, img in enumerate(images):
        if img is None:
            continue
        if isinstance(img, tuple):
            coeff, j = img
            m[j, i] = coeff
        else:
            m[:, i] = img
    return AlgebraMap(source, target, m)


def inverse_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise AlgebraError("only square matrices are invertible")
    aug = np.hstack([np.asarray(mat, dtype=np.int64) % p, np.eye(n, dtype=np.int64)])
    red, pivots = _row_reduce(aug, p)
    if pivots[:n] != list(range(n)):
        raise AlgebraError("matrix is singular mod p")
    return red[:, n:]


def inverse_map(f: AlgebraMap) -> AlgebraMap:
    return AlgebraMap(f.target, f.source, inverse_mod_p(f.matrix, f.source.p))


def tensor_map(f: AlgebraMap, g: AlgebraMap, source: AlgebraTable = None,
               target: AlgebraTable = None) -> AlgebraMap:
    """f (x) g between tensor tables (built on demand if not given)."""
    source = source or tensor_table(f.source, g.source)
    target = target or tensor_table(f.target, g.target)
    return AlgebraMap(source, target, np.kron(f.matrix, g.matrix))


def unit_table(p: int) -> AlgebraTable:
    """The one-dimensional algebra F_p."""
    return AlgebraTable(p, ["1"], np.ones((1, 1, 1), dtype=np.int64))
