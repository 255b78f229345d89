"""Brute-force dual polar spaces over small fields.

Builds the standard form for each family, enumerates the maximal totally
isotropic (or totally singular) subspaces, and measures intersection numbers
directly. This is the ground truth that the closed-form structure constants
are checked against.

Subspaces are identified by the set of projective points they contain,
stored as a Python int bitmask over the isotropic points. That set is a
canonical key, so no echelon form is needed for deduplication, and
dim(x & y) follows from the popcount of the intersection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fields import SmallField, build_field, irreducible_quadratic
from .scheme import SchemeFamily, SchemeParams, adjacency_to_riemann, structure_tensor

DEFAULT_CAP = 5000


class ResourceCapExceeded(RuntimeError):
    pass


class OracleInconsistency(ArithmeticError):
    """The measured configuration is not an association scheme, or the
    measured constants are not integral."""


@dataclass
class FormSpec:
    """A non-degenerate reflexive form on F^n.

    ``gram`` gives the polar form B(x, y) = sum G[i, j] x_i sigma(y_j), with
    sigma the r-Frobenius for Hermitian forms and the identity otherwise.
    Quadratic forms also carry ``quad`` (upper triangular), with
    Q(x) = sum_{i <= j} quad[i, j] x_i x_j.
    """

    kind: str
    n: int
    field: SmallField
    gram: np.ndarray
    quad: np.ndarray = None
    frobenius: int = 1

    def sigma(self, y):
        return self.field.power(y, self.frobenius) if self.frobenius != 1 else y

    def polar(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """B over the last axis of broadcastable element arrays."""
        f = self.field
        sy = self.sigma(y)
        acc = np.zeros(np.broadcast_shapes(x.shape[:-1], y.shape[:-1]), dtype=np.int64)
        for i, j in zip(*np.nonzero(self.gram)):
            term = f.mul[self.gram[i, j], f.mul[x[..., i], sy[..., j]]]
            acc = f.add[acc, term]
        return acc

    def singular(self, x: np.ndarray) -> np.ndarray:
        f = self.field
        if self.kind == "quadratic":
            acc = np.zeros(x.shape[:-1], dtype=np.int64)
            for i, j in zip(*np.nonzero(self.quad)):
                acc = f.add[acc, f.mul[self.quad[i, j], f.mul[x[..., i], x[..., j]]]]
            return acc == 0
        if self.kind == "hermitian":
            return self.polar(x, x) == 0
        return np.ones(x.shape[:-1], dtype=bool)

    def radical_dim(self) -> int:
        return self.n - field_rank(self.field, self.gram)


def field_rank(f: SmallField, mat: np.ndarray) -> int:
    a = np.array(mat, dtype=np.int64)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = f.mul[f.inv[a[r, c]], a[r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = f.sub(a[i], f.mul[a[i, c], a[r]])
        r += 1
        if r == rows:
            break
    return r


def standard_form(family, d: int, q: int) -> FormSpec:
    """Hyperbolic standard form for a family; q is the field order
    (q = r^2 for the Hermitian families)."""
    family = SchemeFamily.parse(family)
    f = build_field(q)
    one, minus_one = 1, int(f.neg[1])
    if family is SchemeFamily.C:
        n = 2 * d
        g = np.zeros((n, n), dtype=np.int64)
        for i in range(d):
            g[i, d + i] = one
            g[d + i, i] = minus_one
        form = FormSpec("symplectic", n, f, g)
    elif family in (SchemeFamily.B, SchemeFamily.D, SchemeFamily.TWO_D):
        if family is SchemeFamily.B:
            if f.char == 2:
                raise ValueError("B family needs odd q (the form degenerates in characteristic 2)")
            n, off = 2 * d + 1, 1
        elif family is SchemeFamily.D:
            n, off = 2 * d, 0
        else:
            n, off = 2 * d + 2, 0
        quad = np.zeros((n, n), dtype=np.int64)
        if family is SchemeFamily.B:
            quad[0, 0] = one
        for i in range(d):
            quad[off + i, off + d + i] = one
        if family is SchemeFamily.TWO_D:
            a, b = irreducible_quadratic(f)
            y1, y2 = 2 * d, 2 * d + 1
            quad[y1, y1] = one
            quad[y1, y2] = a
            quad[y2, y2] = b
        gram = f.add[quad, quad.T]
        form = FormSpec("quadratic", n, f, gram, quad)
    else:
        r = int(round(q**0.5))
        if r * r != q:
            raise ValueError(f"Hermitian families need a square field order, got {q}")
        n = 2 * d + 1 if family is SchemeFamily.TWO_A_EVEN else 2 * d
        form = FormSpec("hermitian", n, f, np.eye(n, dtype=np.int64), frobenius=r)
    if form.radical_dim() != 0:
        raise ValueError(f"standard form for {family.value} is degenerate")
    return form


def field_order(params: SchemeParams) -> int:
    return params.b**params.scale


def expected_size(params: SchemeParams) -> int:
    return int(structure_tensor(params).rho[0, 0, 0])


@dataclass
class PolarSpace:
    params: SchemeParams
    form: FormSpec
    bases: list
    masks: list
    relations: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.masks)


class _PointIndex:
    """Normalized projective points of F^n with a code -> index lookup."""

    def __init__(self, form: FormSpec):
        f, n, q = form.field, form.n, form.field.q
        allv = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)
        allv = allv[:, ::-1]  # coordinate 0 varies fastest; code = sum v_j q^j
        lead = np.argmax(allv != 0, axis=1)
        nonzero = allv.any(axis=1)
        normalized = nonzero & (allv[np.arange(len(allv)), lead] == 1)
        pts = allv[normalized]
        pts = pts[form.singular(pts)]
        self.field = f
        self.q = q
        self.points = pts
        self.weights = q ** np.arange(n, dtype=np.int64)
        self.lookup = np.full(q**n, -1, dtype=np.int64)
        self.lookup[pts @ self.weights] = np.arange(len(pts))

    def normalize(self, vecs: np.ndarray) -> np.ndarray:
        f = self.field
        vecs = vecs[vecs.any(axis=1)]
        lead = np.argmax(vecs != 0, axis=1)
        scale = f.inv[vecs[np.arange(len(vecs)), lead]]
        return f.mul[scale[:, None], vecs]

    def span_mask(self, basis: np.ndarray) -> int:
        f = self.field
        k = basis.shape[0]
        coeffs = np.array(list(itertools.product(range(self.q), repeat=k)), dtype=np.int64)
        vecs = np.zeros((len(coeffs), basis.shape[1]), dtype=np.int64)
        for i in range(k):
            vecs = f.add[vecs, f.mul[coeffs[:, i][:, None], basis[i][None, :]]]
        idx = self.lookup[self.normalize(vecs) @ self.weights]
        if (idx < 0).any():
            raise OracleInconsistency("span contains a non-isotropic vector")
        mask = 0
        for i in set(idx.tolist()):
            mask |= 1 << i
        return mask


def enumerate_maximal_isotropics(form: FormSpec, d: int, cap: int = DEFAULT_CAP):
    """All totally isotropic (singular) d-subspaces as (basis, point mask) pairs."""
    index = _PointIndex(form)
    pts = index.points
    n_pts = len(pts)
    gram_vals = form.polar(pts[:, None, :], pts[None, :, :])
    perp = [0] * n_pts
    for i in range(n_pts):
        for j in np.nonzero(gram_vals[i] == 0)[0].tolist():
            perp[i] |= 1 << j
    full = (1 << n_pts) - 1
    # mask -> indices of the points used as a basis
    level = {1 << i: (i,) for i in range(n_pts)}
    for _ in range(d - 1):
        nxt = {}
        for mask, basis in level.items():
            cand = full & ~mask
            for i in basis:
                cand &= perp[i]
            while cand:
                j = (cand & -cand).bit_length() - 1
                new_basis = basis + (j,)
                new_mask = index.span_mask(pts[list(new_basis)])
                cand &= ~new_mask
                nxt.setdefault(new_mask, new_basis)
        level = nxt
    if len(level) > cap:
        raise ResourceCapExceeded(f"more than {cap} maximal subspaces")
    masks = sorted(level)
    return [pts[list(level[m])] for m in masks], masks


def relation_matrix(masks: list, d: int, q: int) -> np.ndarray:
    """R[x, y] = d - dim(x & y), read off from shared projective points."""
    dim_of = {(q**k - 1) // (q - 1): k for k in range(d + 1)}
    n = len(masks)
    rel = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        mi = masks[i]
        for j in range(i, n):
            c = (mi & masks[j]).bit_count()
            rel[i, j] = rel[j, i] = d - dim_of[c]
    return rel


def build_polar_space(params: SchemeParams, cap: int = DEFAULT_CAP) -> PolarSpace:
    size = expected_size(params)
    if size > cap:
        raise ResourceCapExceeded(f"{params} has {size} points, above the cap {cap}")
    form = standard_form(params.family, params.d, field_order(params))
    bases, masks = enumerate_maximal_isotropics(form, params.d, cap)
    rel = relation_matrix(masks, params.d, form.field.q)
    return PolarSpace(params, form, bases, masks, rel)


def empirical_intersection_numbers(space: PolarSpace) -> np.ndarray:
    """p_{ij}^k measured on the space, indexed [i, j, k].

    Every pair in each relation is scanned; disagreement between
    representatives raises :class:`OracleInconsistency`.
    """
    d = space.params.d
    rel = space.relations
    adj = [(rel == i).astype(np.float64) for i in range(d + 1)]
    out = np.zeros((d + 1, d + 1, d + 1), dtype=object)
    for i in range(d + 1):
        for j in range(d + 1):
            prod = np.rint(adj[i] @ adj[j]).astype(np.int64)
            for k in range(d + 1):
                vals = prod[rel == k]
                if len(vals) == 0:
                    raise OracleInconsistency(f"relation R_{k} is empty")
                if (vals != vals[0]).any():
                    raise OracleInconsistency(
                        f"p_{i}{j}^{k} depends on the representative pair"
                    )
                out[i, j, k] = int(vals[0])
    return out


def empirical_rho(space: PolarSpace) -> np.ndarray:
    """Riemann-basis structure constants measured on the space, [s, t, u]."""
    out = adjacency_to_riemann(space.params, empirical_intersection_numbers(space))
    for v in out.flat:
        if not isinstance(v, int):
            raise OracleInconsistency(f"non-integral constant {v!r}")
    return out


# cache format, one record per line:
#   family <tag> d <d> b <b>
#   field <q>
#   subspace <row>,<row>,...   rows as base-36 digit strings
def save_space(space: PolarSpace, path) -> None:
    lines = [
        f"family {space.params.family.value} d {space.params.d} b {space.params.b}",
        f"field {space.form.field.q}",
    ]
    for basis in space.bases:
        rows = ",".join("".join(np.base_repr(int(x), 36) for x in row) for row in basis)
        lines.append(f"subspace {rows}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_space(path) -> PolarSpace:
    lines = Path(path).read_text().split("\n")
    _, fam, _, d, _, b = lines[0].split()
    params = SchemeParams(SchemeFamily.parse(fam), int(d), int(b))
    q = int(lines[1].split()[1])
    form = standard_form(params.family, params.d, q)
    index = _PointIndex(form)
    bases, masks = [], []
    for line in lines[2:]:
        if not line.strip():
            continue
        rows = line.split()[1].split(",")
        basis = np.array([[int(c, 36) for c in row] for row in rows], dtype=np.int64)
        bases.append(basis)
        masks.append(index.span_mask(basis))
    rel = relation_matrix(masks, params.d, q)
    return PolarSpace(params, form, bases, masks, rel)
