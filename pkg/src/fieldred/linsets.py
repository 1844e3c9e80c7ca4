"""Linear sets B(Pi) of PG(2, q^3) coming from subspaces of PG(8, q).

``B(Pi)`` is the set of points whose spread plane meets ``Pi``; the weight of a
point is the vector dimension of that intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fixed import LineClass, PlaneClass, analyze, span_rows
from .gf import Params
from .linalg import matmul
from .pg import Subspace, projective_space
from .reduction import PointType2, ReductionContext, kernel_pairs

__all__ = [
    "LinearSet",
    "LinearSetKind",
    "LinearSetClass",
    "linear_set",
    "linear_set_from_points",
    "classify_linear_set",
    "linear_set_expected",
    "fixed_subspace_samples",
    "matches",
    "in_h_space",
    "fixed_ruling_planes",
]


@dataclass(frozen=True, eq=False)
class LinearSet:
    source: Subspace | None
    rank: int
    points: np.ndarray   # sorted PG(2, q^3) point IDs
    weights: np.ndarray  # aligned with ``points``
    source_points: np.ndarray

    def weight(self, pid: int) -> int:
        i = np.searchsorted(self.points, pid)
        if i == len(self.points) or self.points[i] != pid:
            return 0
        return int(self.weights[i])


class LinearSetKind(Enum):
    SINGLE_POINT = "single point"
    FQ_LINE = "Fq-line"
    FQ_SUBPLANE = "Fq-subplane"
    CLUB = "club"
    SCATTERED = "scattered"
    RANK6_TYPE_I_II = "rank 6, all Type I and II points"
    OTHER = "other"


@dataclass(frozen=True)
class LinearSetClass:
    kind: LinearSetKind
    types: tuple[int, int, int]      # Type I, II, III point counts
    head_type: int | None = None     # Type of the club head
    line_type: int | None = None     # Type of the PG(2, q^3) line holding the set


def linear_set_from_points(ctx: ReductionContext, ids: np.ndarray,
                           source: Subspace | None = None) -> LinearSet:
    q = ctx.q
    ids = np.asarray(ids, dtype=np.int64)
    spl = ctx.point_to_splane[ids]
    pts, counts = np.unique(spl, return_counts=True)
    weights = np.rint(np.log(counts * (q - 1) + 1) / np.log(q)).astype(np.int64)
    if not ((q**weights - 1) // (q - 1) == counts).all():
        raise ValueError("point set is not a subspace")
    rank = int(np.rint(np.log(len(ids) * (q - 1) + 1) / np.log(q)))
    return LinearSet(source, rank, pts, weights, ids)


def linear_set(ctx: ReductionContext, S: Subspace) -> LinearSet:
    return linear_set_from_points(ctx, ctx.pg8.points_of(S), S)


def _common_line(ctx: ReductionContext, pts: np.ndarray) -> int | None:
    if len(pts) < 2:
        return None
    lid = ctx.join(int(pts[0]), int(pts[1]))
    return lid if np.isin(pts, ctx.line_points[lid]).all() else None


def _types(ctx: ReductionContext, pts: np.ndarray) -> tuple[int, int, int]:
    t = ctx.pg2_type[pts]
    return tuple(int((t == k).sum()) for k in (1, 2, 3))


def _is_subplane(ctx: ReductionContext, ls: LinearSet) -> bool:
    """Every line of the source plane maps to q+1 collinear points."""
    space = ctx.pg8
    F = space.field
    B = space.subspace(space.vectors[ls.source_points]).matrix
    if B.shape[0] != 3:
        return False
    U, W = kernel_pairs(F, projective_space(F, 2).vectors)
    for r in span_rows(space, [matmul(F, U, B), matmul(F, W, B)]):
        img = np.unique(ctx.point_to_splane[r])
        if len(img) != ctx.q + 1 or _common_line(ctx, img) is None:
            return False
    return True


def classify_linear_set(ctx: ReductionContext, ls: LinearSet) -> LinearSetClass:
    q = ctx.q
    types = _types(ctx, ls.points)
    w = ls.weights
    lid = _common_line(ctx, ls.points)
    ltype = int(ctx.line_type[lid]) if lid is not None else None
    if len(ls.points) == 1:
        return LinearSetClass(LinearSetKind.SINGLE_POINT, types)
    if ls.rank == 2 and len(ls.points) == q + 1 and (w == 1).all():
        return LinearSetClass(LinearSetKind.FQ_LINE, types, line_type=ltype)
    if ls.rank == 3:
        if lid is not None and len(ls.points) == q * q + 1 and (w == 2).sum() == 1:
            head = ls.points[w == 2][0]
            return LinearSetClass(LinearSetKind.CLUB, types, int(ctx.pg2_type[head]), ltype)
        if len(ls.points) == q * q + q + 1 and (w == 1).all():
            if lid is not None:
                return LinearSetClass(LinearSetKind.SCATTERED, types, line_type=ltype)
            if _is_subplane(ctx, ls):
                return LinearSetClass(LinearSetKind.FQ_SUBPLANE, types)
    if ls.rank == 6:
        everything = np.flatnonzero(ctx.pg2_type != PointType2.III)
        if np.array_equal(ls.points, everything):
            return LinearSetClass(LinearSetKind.RANK6_TYPE_I_II, types)
    return LinearSetClass(LinearSetKind.OTHER, types, line_type=ltype)


def linear_set_expected(P: Params) -> dict[str, LinearSetClass | tuple[LinearSetClass, ...]]:
    """The linear set of each class of fixed subspace.

    The h2 row has two alternatives: scattered on a Type-I line (type counts
    not prescribed, marked ``None``) or a subplane over GF(q).
    """
    q, n, g, v = P.q, P.n, P.g, P.v
    K = LinearSetKind
    return {
        "fixed point": LinearSetClass(K.SINGLE_POINT, (1, 0, 0)),
        "ptwise-fixed line": LinearSetClass(K.FQ_LINE, (q + 1, 0, 0), line_type=1),
        "fixed-I line": LinearSetClass(K.SINGLE_POINT, (1, 0, 0)),
        "fixed-II line": LinearSetClass(K.FQ_LINE, (n + 1, q - n, 0), line_type=1),
        "ptwise-fixed plane": LinearSetClass(K.FQ_SUBPLANE, (v, 0, 0)),
        "fixed-II1 plane": LinearSetClass(K.CLUB, (g - n, q * q - g + n + 1, 0), 1, 1),
        "fixed-II2 plane": LinearSetClass(K.SCATTERED, (g, v - g, 0), line_type=1),
        "fixed-III plane": LinearSetClass(K.FQ_SUBPLANE, (g, g * (q - n), v - g * (q - n + 1))),
        "h1 plane": LinearSetClass(K.CLUB, (q + 1, q * q - q, 0), 1, 1),
        "h2 plane": (LinearSetClass(K.SCATTERED, None, line_type=1),
                     LinearSetClass(K.FQ_SUBPLANE, (q + 1 + n, q * q - n, 0))),
        "hwise-fixed 5-space": LinearSetClass(K.RANK6_TYPE_I_II, (v, v * (q**3 - q), 0)),
    }


def matches(expected, got: LinearSetClass) -> bool:
    options = expected if isinstance(expected, tuple) else (expected,)
    for e in options:
        if e.kind != got.kind or e.head_type != got.head_type or e.line_type != got.line_type:
            continue
        if e.types is None or e.types == got.types:
            return True
    return False


_LINE_ROWS = {"ptwise-fixed line": LineClass.PTWISE_FIXED, "fixed-I line": LineClass.FIXED_I,
              "fixed-II line": LineClass.FIXED_II}
_PLANE_ROWS = {"ptwise-fixed plane": PlaneClass.PTWISE_FIXED,
               "fixed-II1 plane": PlaneClass.FIXED_II1, "fixed-II2 plane": PlaneClass.FIXED_II2,
               "fixed-III plane": PlaneClass.FIXED_III, "h1 plane": PlaneClass.H1,
               "h2 plane": PlaneClass.H2}


def fixed_subspace_samples(ctx: ReductionContext, limit: int | None = None,
                           seed: int = 0) -> dict[str, list[np.ndarray]]:
    """Point-ID arrays of fixed subspaces, grouped by class (all, or up to
    ``limit`` sampled per class)."""
    fs = analyze(ctx)
    rng = np.random.default_rng(seed)

    def pick(rows):
        if limit is not None and len(rows) > limit:
            rows = rows[np.sort(rng.choice(len(rows), size=limit, replace=False))]
        return list(rows)

    out: dict[str, list[np.ndarray]] = {"fixed point": pick(fs.fixed_points[:, None])}
    lrows, lcls = fs.lines
    for name, c in _LINE_ROWS.items():
        out[name] = pick(lrows[lcls == c])
    prows, pcls = fs.planes
    for name, c in _PLANE_ROWS.items():
        out[name] = pick(prows[pcls == c])
    out["hwise-fixed 5-space"] = list(fs.hwise_points)
    return out


def in_h_space(ctx: ReductionContext, ids: np.ndarray, line_type: int = 1) -> bool:
    """Whether the points lie in an H-5-space over a line of the given type."""
    for lid in np.flatnonzero(ctx.line_type == line_type):
        if np.isin(ids, ctx.h_space_points(int(lid))).all():
            return True
    return False


def fixed_ruling_planes(ctx: ReductionContext, beta: Subspace) -> int:
    """Number of sigma-fixed planes in the ruling system ``{t beta}``.

    ``beta`` is any plane whose linear set is a phi-fixed subplane over GF(q);
    the planes ``t beta`` (t in GF(q^3)*/GF(q)*) are the ruling planes of the
    Segre variety formed by its spread planes.
    """
    count = 0
    for S in ctx.ruling_system(beta):
        if ctx.apply_sigma(S) == S:
            count += 1
    return count
