"""Field reduction of PG(2, q^3) into PG(8, q).

A point ``(x, y, z)`` of PG(2, q^3) becomes the plane of PG(8, q) spanned by
``Theta(l x, l y, l z)`` for ``l`` in GF(q^3)*, where ``Theta`` concatenates the
GF(q)-coordinates of the three entries.  These planes form a Desarguesian
2-spread.  The collineation ``phi: (x, y, z) -> (z^q, x^q, y^q)`` of PG(2, q^3)
induces the order-3 projectivity ``sigma: v -> v M`` of PG(8, q).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property, lru_cache

import numpy as np

from .gf import (
    FieldSpec,
    Params,
    field_tower,
    frobenius_matrix,
    multiplication_matrix,
    prime_power,
    theta_inv,
)
from .linalg import matmul, nullspace
from .pg import Collineation, ProjectiveSpace, Subspace, normalize_rows, projective_space

__all__ = [
    "PointType2",
    "PointType8",
    "ReductionContext",
    "build_context",
    "context",
    "build_sigma",
    "cross",
]


class PointType2(IntEnum):
    I = 1
    II = 2
    III = 3


class PointType8(IntEnum):
    FIXED = 0
    I_COLINEAR = 1
    I_TRIANGLE = 2
    II_COLINEAR = 3
    II_TRIANGLE = 4
    III_TRIANGLE = 5


# rows: [d, e, f] with row vectors (a, b, c) -> (c, a, b)
_CYCLE = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.int64)


def build_sigma(spec: FieldSpec, power: int = 1) -> Collineation:
    """The 9x9 block matrix with ``A`` in block positions (1,2), (2,3), (3,1)."""
    A = frobenius_matrix(spec)
    M = np.zeros((9, 9), dtype=np.int64)
    for i, j in ((0, 1), (1, 2), (2, 0)):
        M[3 * i:3 * i + 3, 3 * j:3 * j + 3] = A
    if power == 2:
        M = matmul(spec.mid, M, M)
    return Collineation(M, 0)


def build_phi(spec: FieldSpec, power: int = 1) -> Collineation:
    P = _CYCLE if power == 1 else _CYCLE @ _CYCLE
    return Collineation(P.copy(), power)


def cross(F, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise cross product over ``F``."""
    def m(i, j):
        return F.sub[F.mul[a[:, i], b[:, j]], F.mul[a[:, j], b[:, i]]]
    return np.stack([m(1, 2), m(2, 0), m(0, 1)], axis=1)


def kernel_pairs(F, duals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two independent vectors orthogonal to each normalized row of ``duals``."""
    d, e, f = duals[:, 0], duals[:, 1], duals[:, 2]
    L = len(duals)
    U = np.zeros((L, 3), dtype=np.int64)
    W = np.zeros((L, 3), dtype=np.int64)
    a = d != 0
    b = (d == 0) & (e != 0)
    c = (d == 0) & (e == 0)
    U[a] = np.stack([F.neg[e[a]], np.ones(a.sum(), np.int64), np.zeros(a.sum(), np.int64)], 1)
    W[a] = np.stack([F.neg[f[a]], np.zeros(a.sum(), np.int64), np.ones(a.sum(), np.int64)], 1)
    U[b] = [1, 0, 0]
    W[b] = np.stack([np.zeros(b.sum(), np.int64), F.neg[f[b]], np.ones(b.sum(), np.int64)], 1)
    U[c] = [1, 0, 0]
    W[c] = [0, 1, 0]
    return U, W


@dataclass(eq=False)
class ReductionContext:
    """Everything derived from one field tower, built lazily and cached.

    PG(2, q^3) points and lines share one ID scheme: a line ``[d, e, f]`` is
    the set of points with ``d x + e y + f z = 0`` and gets the ID of the
    normalized vector ``(d, e, f)``.
    """

    spec: FieldSpec
    params: Params
    phi: Collineation
    sigma: Collineation

    @property
    def q(self) -> int:
        return self.spec.q

    @cached_property
    def pg2(self) -> ProjectiveSpace:
        return projective_space(self.spec.top, 2)

    @cached_property
    def pg8(self) -> ProjectiveSpace:
        return projective_space(self.spec.mid, 8)

    # PG(2, q^3) side

    def big_theta(self, x: int, y: int, z: int) -> np.ndarray:
        if x == y == z == 0:
            raise ValueError("zero triple")
        return self.spec.top.digits[[x, y, z]].reshape(9).astype(np.int64)

    @cached_property
    def phi_image(self) -> np.ndarray:
        V = self.pg2.vectors
        return self.pg2.ids(self.pg2.apply_vectors(self.phi, V))

    @cached_property
    def pg2_type(self) -> np.ndarray:
        top = self.spec.top
        V = self.pg2.vectors
        V1 = self.pg2.vectors[self.phi_image]
        V2 = self.pg2.vectors[self.phi_image[self.phi_image]]
        c = cross(top, V1, V2)
        det = top.add[top.add[top.mul[V[:, 0], c[:, 0]], top.mul[V[:, 1], c[:, 1]]],
                      top.mul[V[:, 2], c[:, 2]]]
        types = np.where(det == 0, PointType2.II, PointType2.III).astype(np.int8)
        types[self.phi_image == np.arange(self.pg2.size)] = PointType2.I
        return types

    def classify_pg2_point(self, pid: int) -> PointType2:
        return PointType2(int(self.pg2_type[pid]))

    @cached_property
    def line_points(self) -> np.ndarray:
        """``line_points[l]`` is the sorted array of point IDs on line ``l``."""
        return self._kernel_ids(self.pg2.vectors)

    def _kernel_ids(self, duals: np.ndarray) -> np.ndarray:
        top = self.spec.top
        U, W = kernel_pairs(top, duals)
        Q = top.order
        out = np.empty((len(duals), Q + 1), dtype=np.int64)
        for a in range(Q):
            out[:, a] = self.pg2.ids(top.add[W, top.mul[a, U]])
        out[:, Q] = self.pg2.ids(U)
        out.sort(axis=1)
        return out

    def lines_through(self, pid: int) -> np.ndarray:
        """IDs of the lines through point ``pid`` (dual of ``line_points``)."""
        return self._kernel_ids(self.pg2.vectors[[pid]])[0]

    @cached_property
    def line_type(self) -> np.ndarray:
        n_fixed = (self.pg2_type[self.line_points] == PointType2.I).sum(axis=1)
        q = self.q
        types = np.full(self.pg2.size, PointType2.III, dtype=np.int8)
        types[n_fixed == 1] = PointType2.II
        types[n_fixed == q + 1] = PointType2.I
        if not np.isin(n_fixed, [0, 1, q + 1]).all():
            raise AssertionError("line meets the fixed subplane in an impossible number of points")
        return types

    def classify_pg2_line(self, lid: int) -> PointType2:
        return PointType2(int(self.line_type[lid]))

    def join(self, a: int, b: int) -> int:
        """ID of the line through distinct points ``a`` and ``b``."""
        V = self.pg2.vectors
        return int(self.pg2.ids(cross(self.spec.top, V[[a]], V[[b]]))[0])

    def join_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        V = self.pg2.vectors
        return self.pg2.ids(cross(self.spec.top, V[a], V[b]))

    meet_lines = join
    meet_lines_many = join_many

    # PG(8, q) side

    @cached_property
    def point_to_splane(self) -> np.ndarray:
        q = self.q
        V = self.pg8.vectors.reshape(-1, 3, 3)
        triples = V[:, :, 0] + q * V[:, :, 1] + q * q * V[:, :, 2]
        return self.pg2.ids(triples)

    @cached_property
    def splane_points(self) -> np.ndarray:
        """Row ``P`` lists the PG(8, q) point IDs of the spread plane of ``P``."""
        counts = np.bincount(self.point_to_splane, minlength=self.pg2.size)
        v = self.params.v
        if not (counts == v).all():
            raise AssertionError("spread planes do not partition PG(8,q)")
        order = np.argsort(self.point_to_splane, kind="stable")
        return order.reshape(self.pg2.size, v)

    def spread_plane(self, pid: int) -> Subspace:
        top, q = self.spec.top, self.q
        x, y, z = (int(c) for c in self.pg2.vectors[pid])
        rows = [self.big_theta(top.mul[t, x], top.mul[t, y], top.mul[t, z]) for t in (1, q, q * q)]
        return self.pg8.subspace(np.array(rows))

    def h_space(self, lid: int) -> Subspace:
        a, b = self.line_points[lid][:2]
        return self.pg8.span(self.spread_plane(int(a)), self.spread_plane(int(b)))

    def h_space_points(self, lid: int) -> np.ndarray:
        return np.sort(self.splane_points[self.line_points[lid]].ravel())

    def back_map_B(self, ids) -> np.ndarray:
        return np.unique(self.point_to_splane[np.asarray(ids, dtype=np.int64)])

    @cached_property
    def sigma_raw(self) -> tuple[np.ndarray, np.ndarray]:
        F = self.spec.mid
        M = self.sigma.matrix
        w1 = matmul(F, self.pg8.vectors, M)
        w2 = matmul(F, w1, M)
        return w1, w2

    @cached_property
    def sigma_image(self) -> np.ndarray:
        return self.pg8.ids(self.sigma_raw[0])

    @cached_property
    def pg8_type(self) -> np.ndarray:
        F = self.spec.mid
        V = self.pg8.vectors
        w1, w2 = self.sigma_raw
        colinear = np.zeros(len(V), dtype=bool)
        for a, b in itertools.product(range(F.order), repeat=2):
            if F.is_prime:
                comb = (a * V + b * w1) % F.order
            else:
                comb = F.add[F.mul[a, V], F.mul[b, w1]]
            colinear |= (comb == w2).all(axis=1)
        fixed = self.sigma_image == np.arange(len(V))
        stype = self.pg2_type[self.point_to_splane]
        out = np.empty(len(V), dtype=np.int8)
        table = {(1, True): 1, (1, False): 2, (2, True): 3, (2, False): 4, (3, False): 5}
        for (t, col), code in table.items():
            out[(stype == t) & (colinear == col)] = code
        if ((stype == 3) & colinear & ~fixed).any():
            raise AssertionError("collinear orbit inside a Type III spread plane")
        out[fixed] = PointType8.FIXED
        return out

    def classify_pg8_point(self, pid: int) -> PointType8:
        return PointType8(int(self.pg8_type[pid]))

    def sigma_power(self, k: int) -> np.ndarray:
        img = np.arange(self.pg8.size)
        for _ in range(k % 3):
            img = self.sigma_image[img]
        return img

    def apply_sigma(self, S: Subspace, k: int = 1) -> Subspace:
        for _ in range(k % 3):
            S = self.pg8.apply_sub(self.sigma, S)
        return S

    # scalar multiplications and ruling planes

    def scalar_matrix(self, t: int) -> np.ndarray:
        T = multiplication_matrix(self.spec, t)
        out = np.zeros((9, 9), dtype=np.int64)
        for i in range(3):
            out[3 * i:3 * i + 3, 3 * i:3 * i + 3] = T
        return out

    @cached_property
    def scalar_classes(self) -> list[int]:
        """Representatives of GF(q^3)* / GF(q)*."""
        return [theta_inv(self.spec, v) for v in projective_space(self.spec.mid, 2).vectors]

    def scaled(self, S: Subspace, t: int) -> Subspace:
        return self.pg8.subspace(matmul(self.spec.mid, S.matrix, self.scalar_matrix(t)))

    def ruling_system(self, S: Subspace) -> list[Subspace]:
        """The planes ``t S`` for ``t`` in GF(q^3)*/GF(q)*.

        When ``B(S)`` is a subplane over GF(q) these are the ruling planes of
        the Segre variety covering its spread planes that meet each of those
        spread planes in one point.
        """
        return [self.scaled(S, t) for t in self.scalar_classes]

    @cached_property
    def base_fixed_plane(self) -> Subspace:
        """The plane of vectors fixed by ``M`` itself (not just up to scalar)."""
        F = self.spec.mid
        M = self.sigma.matrix
        K = nullspace(F, F.sub[M.T, np.eye(9, dtype=np.int64)])
        return self.pg8.subspace(K)

    @cached_property
    def subplane_ruling_planes(self) -> list[Subspace]:
        return self.ruling_system(self.base_fixed_plane)


def build_context(q: int, phi_power: int = 1) -> ReductionContext:
    p, k = prime_power(q)
    spec = field_tower(p, k)
    return ReductionContext(spec, spec.params, build_phi(spec, phi_power), build_sigma(spec, phi_power))


@lru_cache(maxsize=None)
def context(q: int, phi_power: int = 1) -> ReductionContext:
    """Shared, cached context for ``q``."""
    return build_context(q, phi_power)
