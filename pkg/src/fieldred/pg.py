"""Projective spaces PG(d, F): point enumeration, subspaces, collineations.

Points are normalized so their first nonzero coordinate is 1.  Point IDs are
dense: the ID of a point is its rank among all normalized vectors ordered
lexicographically (first coordinate most significant).  Subspaces are stored
by the reduced row echelon form of a basis, which is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .gf import FiniteField
from .linalg import matmul, nullspace, rank, rref

__all__ = [
    "ProjPoint",
    "Subspace",
    "Collineation",
    "ProjectiveSpace",
    "projective_space",
    "normalize",
    "normalize_rows",
]


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class Subspace:
    """Canonical subspace: ``basis`` is an RREF matrix stored as nested tuples."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(len(self.basis), self.ambient_dim + 1)


@dataclass(frozen=True, eq=False)
class Collineation:
    """``x -> frob^k(x) M`` acting on row vectors, up to scalars."""

    matrix: np.ndarray
    frob_power: int = 0


def normalize_rows(F: FiniteField, vecs) -> np.ndarray:
    """Scale each nonzero row so its first nonzero entry is 1."""
    vecs = np.asarray(vecs, dtype=np.int64)
    nz = vecs != 0
    if not nz.any(axis=1).all():
        raise ValueError("zero vector has no projective point")
    lead = np.argmax(nz, axis=1)
    scale = F.inv[vecs[np.arange(len(vecs)), lead]]
    return F.mul[scale[:, None], vecs]


def normalize(F: FiniteField, v) -> ProjPoint:
    return ProjPoint(tuple(int(c) for c in normalize_rows(F, np.atleast_2d(v))[0]))


def _as_rows(obj, n: int) -> np.ndarray:
    if isinstance(obj, Subspace):
        return obj.matrix
    if isinstance(obj, ProjPoint):
        return np.array([obj.coords], dtype=np.int64)
    arr = np.asarray(obj, dtype=np.int64)
    return arr.reshape(-1, n)


class ProjectiveSpace:
    """PG(dim, F) with dense point IDs."""

    def __init__(self, field: FiniteField, dim: int):
        self.field = field
        self.dim = dim
        self.n = dim + 1
        q = field.order
        self.size = (q**self.n - 1) // (q - 1)
        self._weights = q ** np.arange(self.n - 1, -1, -1, dtype=np.int64)

    def __repr__(self) -> str:
        return f"PG({self.dim},{self.field.order})"

    @cached_property
    def vectors(self) -> np.ndarray:
        """All normalized vectors, row ``i`` being the point with ID ``i``."""
        q, n = self.field.order, self.n
        blocks = []
        for lead in range(n - 1, -1, -1):
            tail = n - 1 - lead
            m = q**tail
            block = np.zeros((m, n), dtype=np.int64)
            block[:, lead] = 1
            if tail:
                idx = np.arange(m)
                for j in range(tail):
                    block[:, n - 1 - j] = (idx // q**j) % q
            blocks.append(block)
        vecs = np.concatenate(blocks)
        vecs.setflags(write=False)
        return vecs

    @cached_property
    def keys(self) -> np.ndarray:
        keys = self.vectors @ self._weights
        assert np.all(np.diff(keys) > 0)
        return keys

    def ids(self, vecs, normalized: bool = False) -> np.ndarray:
        vecs = np.asarray(vecs, dtype=np.int64)
        if not normalized:
            vecs = normalize_rows(self.field, vecs.reshape(-1, self.n))
        return np.searchsorted(self.keys, vecs.reshape(-1, self.n) @ self._weights)

    def point_id(self, p) -> int:
        coords = p.coords if isinstance(p, ProjPoint) else p
        return int(self.ids(np.array([coords]))[0])

    def point(self, pid: int) -> ProjPoint:
        return ProjPoint(tuple(int(c) for c in self.vectors[pid]))

    def all_points(self) -> np.ndarray:
        return np.arange(self.size)

    # subspaces

    def subspace(self, rows) -> Subspace:
        rows = _as_rows(rows, self.n)
        R, _ = rref(self.field, rows)
        if R.shape[0] == 0:
            raise ValueError("empty subspace")
        return Subspace(self.dim, tuple(tuple(int(x) for x in r) for r in R))

    def span(self, *objs) -> Subspace:
        if not objs:
            raise ValueError("span of nothing")
        for o in objs:
            if isinstance(o, Subspace) and o.ambient_dim != self.dim:
                raise ValueError("mixed ambient dimensions")
        return self.subspace(np.vstack([_as_rows(o, self.n) for o in objs]))

    def annihilator(self, S) -> np.ndarray:
        return nullspace(self.field, _as_rows(S, self.n))

    def meet(self, S, T) -> Subspace | None:
        for o in (S, T):
            if isinstance(o, Subspace) and o.ambient_dim != self.dim:
                raise ValueError("mixed ambient dimensions")
        dual = np.vstack([self.annihilator(S), self.annihilator(T)])
        basis = nullspace(self.field, dual, ncols=self.n)
        if basis.shape[0] == 0:
            return None
        return self.subspace(basis)

    def contains(self, S, X) -> bool:
        rows = _as_rows(S, self.n)
        return rank(self.field, np.vstack([rows, _as_rows(X, self.n)])) == rank(self.field, rows)

    def vectors_of(self, S) -> np.ndarray:
        """Normalized vectors of all points of ``S`` (any order)."""
        B = _as_rows(S, self.n)
        if isinstance(S, Subspace):
            R = B
        else:
            R, _ = rref(self.field, B)
        coeffs = projective_space(self.field, R.shape[0] - 1).vectors
        # With an RREF basis, normalized coefficients give normalized vectors.
        return matmul(self.field, coeffs, R)

    def points_of(self, S) -> np.ndarray:
        """Sorted IDs of the points of ``S``."""
        return np.sort(self.ids(self.vectors_of(S), normalized=True))

    # collineations

    def apply_vectors(self, c: Collineation, vecs) -> np.ndarray:
        """Unnormalized images of row vectors under ``c``."""
        vecs = np.asarray(vecs, dtype=np.int64)
        for _ in range(c.frob_power):
            vecs = self.field.frob[vecs]
        return matmul(self.field, vecs, c.matrix)

    def apply(self, c: Collineation, p):
        if isinstance(p, ProjPoint):
            img = self.apply_vectors(c, np.array([p.coords]))
            return normalize(self.field, img[0])
        return self.ids(self.apply_vectors(c, self.vectors[np.asarray(p)]))

    def apply_sub(self, c: Collineation, S: Subspace) -> Subspace:
        return self.subspace(self.apply_vectors(c, S.matrix))


@lru_cache(maxsize=None)
def projective_space(field: FiniteField, dim: int) -> ProjectiveSpace:
    return ProjectiveSpace(field, dim)
