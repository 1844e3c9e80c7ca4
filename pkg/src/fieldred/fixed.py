"""Subspaces of PG(8, q) fixed by sigma: points, lines, planes, 5-spaces.

Fixed lines and planes are generated structurally (orbit spans, lines of
pointwise fixed planes, spans inside the hyperplane-wise fixed 5-spaces) and
never by enumerating all subspaces.  The closed-form counts then certify that
nothing was missed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import cached_property, lru_cache

import numpy as np
from scipy import sparse

from .gf import Params, cube_roots_of_unity
from .linalg import matmul, nullspace
from .pg import ProjectiveSpace, Subspace, projective_space
from .reduction import PointType2, PointType8, ReductionContext, kernel_pairs
from .report import Report

__all__ = [
    "LineClass",
    "PlaneClass",
    "CongruenceKind",
    "Congruence",
    "ClassificationError",
    "FixedStructure",
    "analyze",
    "span_rows",
    "count_expected",
    "point_composition_expected",
    "line_composition_expected",
    "Census",
    "census",
    "congruence_classify",
    "transversals",
    "verify_regulus",
    "verify_hwise",
    "verify_segre_structure",
    "verify_pifix_line_structure",
    "verify_intersections_with_hspaces",
    "sigma3_spaces",
    "verify_fixed_i_reguli",
]

T = PointType8


class ClassificationError(AssertionError):
    """A fixed subspace fits none of the known classes."""


class LineClass(IntEnum):
    PTWISE_FIXED = 0
    FIXED_I = 1
    FIXED_II = 2


class PlaneClass(IntEnum):
    PTWISE_FIXED = 0
    SPLANE_I = 1
    FIXED_II1 = 2
    FIXED_II2 = 3
    FIXED_III = 4
    H1 = 5
    H2 = 6


class CongruenceKind(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Congruence:
    kind: CongruenceKind
    axes: tuple[Subspace, ...] = ()


# helpers


def _combine(F, coeffs: np.ndarray, gens: list[np.ndarray]) -> np.ndarray:
    if F.is_prime:
        acc = sum(int(c) * g for c, g in zip(coeffs, gens))
        return acc % F.order
    acc = np.zeros_like(gens[0])
    for c, g in zip(coeffs, gens):
        if c:
            acc = F.add[acc, F.mul[int(c), g]]
    return acc


def span_rows(space: ProjectiveSpace, gens: list[np.ndarray]) -> np.ndarray:
    """Point IDs of the spans of independent generator rows, one span per row.

    ``gens`` holds ``k`` arrays of shape ``(N, n)``; row ``i`` of the result
    lists (sorted) the points of the span of ``gens[0][i], ..., gens[k-1][i]``.
    """
    F = space.field
    coeffs = projective_space(F, len(gens) - 1).vectors
    out = np.empty((len(gens[0]), len(coeffs)), dtype=np.int64)
    for j, c in enumerate(coeffs):
        out[:, j] = space.ids(_combine(F, c, gens))
    out.sort(axis=1)
    return out


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    return np.unique(rows, axis=0)


def _row_subspace(space: ProjectiveSpace, row: np.ndarray, k: int) -> Subspace:
    """Subspace of projective dimension ``k - 1`` spanned by points of ``row``."""
    basis = [int(row[0])]
    vecs = space.vectors
    for pid in row[1:]:
        if len(basis) == k:
            break
        cand = basis + [int(pid)]
        if len(space.subspace(vecs[cand]).basis) == len(cand):
            basis = cand
    return space.subspace(vecs[basis])


def _composition(types: np.ndarray, rows: np.ndarray) -> np.ndarray:
    t = types[rows]
    return np.stack([(t == c).sum(axis=1) for c in range(6)], axis=1)


def _incidence(rows: np.ndarray, n_points: int) -> sparse.csc_matrix:
    C, s = rows.shape
    data = np.ones(C * s, dtype=np.int32)
    ptr = np.repeat(np.arange(C), s)
    return sparse.csr_matrix((data, (ptr, rows.ravel())), shape=(C, n_points)).tocsc()


# the structure


class FixedStructure:
    """All sigma-fixed points, lines, planes and hyperplane-wise fixed 5-spaces."""

    def __init__(self, ctx: ReductionContext):
        self.ctx = ctx
        self.params: Params = ctx.params

    @property
    def space(self) -> ProjectiveSpace:
        return self.ctx.pg8

    @cached_property
    def fixed_points(self) -> np.ndarray:
        return np.flatnonzero(self.ctx.sigma_image == np.arange(self.space.size))

    @cached_property
    def eigenvalues(self) -> list[int]:
        return cube_roots_of_unity(self.ctx.spec.mid)

    def _eigenspaces(self, transpose: bool) -> list[np.ndarray]:
        F = self.ctx.spec.mid
        M = self.ctx.sigma.matrix
        out = []
        for lam in self.eigenvalues:
            A = F.sub[M.T if transpose else M, F.mul[lam, np.eye(9, dtype=np.int64)]]
            K = nullspace(F, A)
            if len(K):
                out.append(K)
        return out

    @cached_property
    def ptwise_planes(self) -> list[Subspace]:
        """Eigenspaces of the row action ``v -> v M``."""
        return [self.space.subspace(K) for K in self._eigenspaces(transpose=True)]

    @cached_property
    def ptwise_plane_points(self) -> list[np.ndarray]:
        return [self.space.points_of(S) for S in self.ptwise_planes]

    @cached_property
    def hwise_spaces(self) -> list[Subspace]:
        """Annihilators of the eigenspaces of the column action ``h -> M h``.

        A hyperplane ``{v : v.h = 0}`` is mapped to ``{v : v.(M^-1 h) = 0}``,
        so the hyperplanes through the annihilator of a column eigenspace are
        all fixed.
        """
        F = self.ctx.spec.mid
        return [self.space.subspace(nullspace(F, E)) for E in self._eigenspaces(transpose=False)]

    @cached_property
    def hwise_points(self) -> list[np.ndarray]:
        return [self.space.points_of(S) for S in self.hwise_spaces]

    def mask(self, ids: np.ndarray) -> np.ndarray:
        m = np.zeros(self.space.size, dtype=bool)
        m[ids] = True
        return m

    @cached_property
    def hwise_masks(self) -> list[np.ndarray]:
        return [self.mask(p) for p in self.hwise_points]

    # lines

    def _ptwise_line_rows(self) -> np.ndarray:
        F = self.ctx.spec.mid
        duals = projective_space(F, 2).vectors
        U, W = kernel_pairs(F, duals)
        rows = []
        for S in self.ptwise_planes:
            B = S.matrix
            gens = [matmul(F, U, B), matmul(F, W, B)]
            rows.append(span_rows(self.space, gens))
        return np.concatenate(rows) if rows else np.empty((0, self.params.q + 1), np.int64)

    def _orbit_rows(self, types: tuple[int, ...], k: int, chunk: int = 20000) -> np.ndarray:
        """Rows of ``span(P, P^sigma, ...)`` (``k`` generators) for points of the
        given types, one row per distinct span."""
        ctx = self.ctx
        ptype = ctx.pg8_type
        V = self.space.vectors
        w1, w2 = ctx.sigma_raw
        ids = np.flatnonzero(np.isin(ptype, types))
        kept = []
        for s in range(0, len(ids), chunk):
            part = ids[s:s + chunk]
            gens = [V[part], w1[part], w2[part]][:k]
            rows = span_rows(self.space, gens)
            same = ptype[rows] == ptype[part][:, None]
            key = np.where(same, rows, np.iinfo(np.int64).max).min(axis=1)
            kept.append(rows[key == part])
        return np.concatenate(kept) if kept else np.empty((0, 0), np.int64)

    @cached_property
    def lines(self) -> tuple[np.ndarray, np.ndarray]:
        """``(rows, classes)`` of all fixed lines."""
        q, n = self.params.q, self.params.n
        rows = np.concatenate([self._ptwise_line_rows(),
                               self._orbit_rows((T.I_COLINEAR, T.II_COLINEAR), 2)])
        rows = _unique_rows(rows)
        img = np.sort(self.ctx.sigma_image[rows], axis=1)
        if not (img == rows).all():
            raise ClassificationError("candidate line is not sigma-invariant")
        comp = _composition(self.ctx.pg8_type, rows)
        cls = np.full(len(rows), -1, dtype=np.int8)
        cls[comp[:, T.FIXED] == q + 1] = LineClass.PTWISE_FIXED
        cls[(comp[:, T.FIXED] == n + 1) & (comp[:, T.I_COLINEAR] == q - n)] = LineClass.FIXED_I
        cls[(comp[:, T.FIXED] == n + 1) & (comp[:, T.II_COLINEAR] == q - n)] = LineClass.FIXED_II
        if (cls < 0).any():
            raise ClassificationError(f"fixed line with composition {comp[cls < 0][0]}")
        return rows, cls

    def line_rows(self, cls: LineClass) -> np.ndarray:
        rows, c = self.lines
        return rows[c == cls]

    def line_subspace(self, row: np.ndarray) -> Subspace:
        return _row_subspace(self.space, row, 2)

    # planes

    def _h_plane_rows(self) -> np.ndarray:
        rows_all, cls_all = self.lines
        V = self.space.vectors
        found = []
        for mask in self.hwise_masks:
            inside = mask[rows_all].all(axis=1)
            pt = rows_all[inside & (cls_all == LineClass.PTWISE_FIXED)]
            other = rows_all[inside & (cls_all != LineClass.PTWISE_FIXED)]
            through: dict[int, list[int]] = {}
            for i, r in enumerate(pt):
                for p in r:
                    through.setdefault(int(p), []).append(i)
            fixed = self.mask(self.fixed_points)
            g1, g2, g3 = [], [], []
            for r in other:
                free = int(r[~fixed[r]][0])
                for p in r[fixed[r]]:
                    for i in through.get(int(p), []):
                        g1.append(pt[i][0])
                        g2.append(pt[i][1])
                        g3.append(free)
            if g1:
                found.append(span_rows(self.space, [V[g1], V[g2], V[g3]]))
        if not found:
            return np.empty((0, self.params.v), np.int64)
        return _unique_rows(np.concatenate(found))

    @cached_property
    def planes(self) -> tuple[np.ndarray, np.ndarray]:
        """``(rows, classes)`` of all fixed planes."""
        ctx = self.ctx
        ptw = np.sort(np.array(self.ptwise_plane_points), axis=1)
        splanes_i = np.sort(ctx.splane_points[ctx.pg2_type == PointType2.I], axis=1)
        orbit = self._orbit_rows((T.II_TRIANGLE, T.III_TRIANGLE), 3)
        hplanes = self._h_plane_rows()
        rows = np.concatenate([ptw, splanes_i, orbit, hplanes])
        rows = _unique_rows(rows)
        img = np.sort(ctx.sigma_image[rows], axis=1)
        if not (img == rows).all():
            raise ClassificationError("candidate plane is not sigma-invariant")
        return rows, self._classify_planes(rows)

    def _classify_planes(self, rows: np.ndarray) -> np.ndarray:
        ctx = self.ctx
        v = self.params.v
        comp = _composition(ctx.pg8_type, rows)
        spl = ctx.point_to_splane[rows]
        one_splane = (spl == spl[:, :1]).all(axis=1)
        cls = np.full(len(rows), -1, dtype=np.int8)
        cls[comp[:, T.FIXED] == v] = PlaneClass.PTWISE_FIXED
        cls[one_splane] = PlaneClass.SPLANE_I
        rest = cls < 0
        iii = rest & (comp[:, T.III_TRIANGLE] > 0)
        ii = rest & ~iii & (comp[:, T.II_TRIANGLE] > 0)
        h = rest & ~iii & ~ii
        cls[iii] = PlaneClass.FIXED_III
        cls[ii & (comp[:, T.I_COLINEAR] > 0)] = PlaneClass.FIXED_II1
        cls[ii & (comp[:, T.I_COLINEAR] == 0)] = PlaneClass.FIXED_II2
        in_hwise = np.zeros(len(rows), dtype=bool)
        for m in self.hwise_masks:
            in_hwise |= m[rows].all(axis=1)
        if (h & ~in_hwise).any():
            raise ClassificationError("fixed plane without triangle points outside every hwise-fixed 5-space")
        cls[h & (comp[:, T.I_COLINEAR] > 0)] = PlaneClass.H1
        cls[h & (comp[:, T.I_COLINEAR] == 0)] = PlaneClass.H2
        return cls

    def plane_rows(self, cls: PlaneClass) -> np.ndarray:
        rows, c = self.planes
        return rows[c == cls]

    @cached_property
    def triangle_plane_index(self) -> np.ndarray:
        """For each II.. or III.. point, the index (into ``planes``) of its
        orbit plane; -1 elsewhere."""
        rows, cls = self.planes
        idx = np.full(self.space.size, -1, dtype=np.int64)
        ptype = self.ctx.pg8_type
        which = np.flatnonzero(np.isin(cls, [PlaneClass.FIXED_II1, PlaneClass.FIXED_II2,
                                             PlaneClass.FIXED_III]))
        sub = rows[which]
        sel = np.isin(ptype[sub], [T.II_TRIANGLE, T.III_TRIANGLE])
        idx[sub[sel]] = np.broadcast_to(which[:, None], sub.shape)[sel]
        return idx

    def plane_subspace(self, row: np.ndarray) -> Subspace:
        return _row_subspace(self.space, row, 3)

    # containment counts

    def lines_in_rows(self, rows: np.ndarray) -> np.ndarray:
        """For each container (row of point IDs), how many fixed lines of each
        class it contains: array of shape ``(len(rows), 3)``."""
        lrows, lcls = self.lines
        inc = _incidence(rows, self.space.size)
        both = inc[:, lrows[:, 0]].multiply(inc[:, lrows[:, 1]]).tocsr()
        onehot = np.zeros((len(lrows), 3), dtype=np.int64)
        onehot[np.arange(len(lrows)), lcls] = 1
        return np.asarray(both @ onehot)

    @cached_property
    def lines_per_pg2_line(self) -> np.ndarray:
        """Fixed lines of each class inside each H-5-space, indexed by PG(2,q^3) line."""
        ctx = self.ctx
        lrows, lcls = self.lines
        out = np.zeros((ctx.pg2.size, 3), dtype=np.int64)
        spl = np.sort(ctx.point_to_splane[lrows], axis=1)
        for r, c in zip(spl, lcls):
            pts = np.unique(r)
            if len(pts) == 1:
                out[ctx.lines_through(int(pts[0])), c] += 1
            else:
                out[ctx.join(int(pts[0]), int(pts[1])), c] += 1
        return out


@lru_cache(maxsize=None)
def analyze(ctx: ReductionContext) -> FixedStructure:
    return FixedStructure(ctx)


# closed forms


def count_expected(P: Params) -> dict[str, int]:
    q, n, g, v = P.q, P.n, P.g, P.v
    k = q - n + 1

    def div(a: int, b: int) -> int:
        if a % b:
            raise ArithmeticError("closed form is not an integer")
        return a // b

    return {
        "S_I-plane": v,
        "S_II-plane": v * (q**3 - q),
        "S_III-plane": q**3 * (q - 1) ** 2 * (q + 1),
        "fixed point": g * v,
        "I: point": g * (q - n) * v,
        "I.. point": (v - g * k) * v,
        "II: point": g * v * (q**3 - q),
        "II.. point": v * (q**3 - q) * (v - g),
        "III.. point": q**3 * (q**2 - 1) * (q**3 - 1),
        "ptwise-fixed line": g * v,
        "fixed-I line": g * v,
        "fixed-II line": div(g * (q**3 - q) * v, q - n),
        "ptwise-fixed plane": g,
        "fixed-II1 plane": g * (q - 2 + g - n) * (q + 1) * v,
        "fixed-II2 plane": (q**3 - q) * v,
        "fixed-III plane": div(q**3 * (q**2 - 1) * (q - 1) * v, v - g * k),
        "h1 plane": g * (n + 1) * v * (q + 1),
        "h2 plane": g * (n + 1) * v * (q**2 - 1 + n),
        "hwise-fixed 5-space": g,
    }


POINT_COLUMNS = ("fixed", "I:", "I..", "II:", "II..", "III..")
LINE_COLUMNS = ("ptwise-fixed", "fixed-I", "fixed-II")


def point_composition_expected(P: Params) -> dict[str, tuple[int, ...]]:
    """Points of each of the six types inside each kind of container."""
    q, n, g, v = P.q, P.n, P.g, P.v
    k = q - n + 1
    return {
        "ptwise-fixed line": (q + 1, 0, 0, 0, 0, 0),
        "fixed-I line": (n + 1, q - n, 0, 0, 0, 0),
        "fixed-II line": (n + 1, 0, 0, q - n, 0, 0),
        "S_I-plane": (g, g * (q - n), v - g * k, 0, 0, 0),
        "S_II-plane": (0, 0, 0, g, v - g, 0),
        "S_III-plane": (0, 0, 0, 0, 0, v),
        "ptwise-fixed plane": (v, 0, 0, 0, 0, 0),
        "fixed-II1 plane": (g, q - n, 0, (g - 1) * (q - n), v - g * k, 0),
        "fixed-II2 plane": (g, 0, 0, g * (q - n), v - g * k, 0),
        "fixed-III plane": (g, 0, 0, g * (q - n), 0, v - g * k),
        "h1 plane": (q + 1 + n, q - n, 0, q * q - q, 0, 0),
        "h2 plane": (q + 1 + n, 0, 0, q * q - n, 0, 0),
        "hwise-fixed 5-space": ((n + 1) * v, (q - n) * v, 0, (q**3 - q) * v, 0, 0),
    }


def line_composition_expected(P: Params) -> dict[str, tuple[int, ...]]:
    """Fixed lines of each class inside each kind of container."""
    q, n, g, v = P.q, P.n, P.g, P.v
    return {
        "S_I-plane": (0, g, 0),
        "S_II-plane": (0, 0, 0),
        "S_III-plane": (0, 0, 0),
        "ptwise-fixed plane": (v, 0, 0),
        "fixed-II1 plane": (0, 1, g - 1),
        "fixed-II2 plane": (0, 0, g),
        "fixed-III plane": (0, 0, g),
        "h1 plane": (1, 1, q - 1 + n),
        "h2 plane": (1, 0, q + n),
        "H_I 5-space": (g, g * (q + 1), g * (q**3 - q) // (q - n)),
        "H_II 5-space": (0, g, 0),
        "H_III 5-space": (0, 0, 0),
        "hwise-fixed 5-space": ((n + 1) * v, v, (q**3 - q) * v // (q - n)),
    }


_PLANE_ROWS = {
    "ptwise-fixed plane": PlaneClass.PTWISE_FIXED,
    "fixed-II1 plane": PlaneClass.FIXED_II1,
    "fixed-II2 plane": PlaneClass.FIXED_II2,
    "fixed-III plane": PlaneClass.FIXED_III,
    "h1 plane": PlaneClass.H1,
    "h2 plane": PlaneClass.H2,
}
_SPLANE_ROWS = {"S_I-plane": PointType2.I, "S_II-plane": PointType2.II, "S_III-plane": PointType2.III}
_HSPACE_ROWS = {"H_I 5-space": PointType2.I, "H_II 5-space": PointType2.II, "H_III 5-space": PointType2.III}


@dataclass
class Cell:
    table: str
    row: str
    column: str
    expected: int
    computed: object
    containers: int | None = None

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass
class Census:
    """Every cell of the subspace-count and composition tables."""

    q: int
    counts: dict[str, int]
    cells: list[Cell]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def failures(self) -> list[Cell]:
        return [c for c in self.cells if not c.passed]

    def table(self, name: str) -> list[Cell]:
        return [c for c in self.cells if c.table == name]


def _agree(values: np.ndarray):
    """The common value of a column, or the sorted list of distinct values."""
    u = np.unique(values)
    if len(u) == 1:
        return int(u[0])
    return [int(x) for x in u]


def _sample(rows: np.ndarray, limit: int | None, rng: np.random.Generator) -> np.ndarray:
    if limit is None or len(rows) <= limit:
        return rows
    return rows[np.sort(rng.choice(len(rows), size=limit, replace=False))]


def census(ctx: ReductionContext, sample: int | None = None, seed: int = 0) -> Census:
    """Count every class and check every composition against the closed forms.

    ``sample`` limits the number of containers checked per composition row
    (``None`` checks all of them).
    """
    fs = analyze(ctx)
    P = ctx.params
    rng = np.random.default_rng(seed)
    ptype = ctx.pg8_type
    lrows, lcls = fs.lines
    prows, pcls = fs.planes
    counts = {
        "S_I-plane": int((ctx.pg2_type == 1).sum()),
        "S_II-plane": int((ctx.pg2_type == 2).sum()),
        "S_III-plane": int((ctx.pg2_type == 3).sum()),
        "fixed point": int((ptype == T.FIXED).sum()),
        "I: point": int((ptype == T.I_COLINEAR).sum()),
        "I.. point": int((ptype == T.I_TRIANGLE).sum()),
        "II: point": int((ptype == T.II_COLINEAR).sum()),
        "II.. point": int((ptype == T.II_TRIANGLE).sum()),
        "III.. point": int((ptype == T.III_TRIANGLE).sum()),
        "ptwise-fixed line": int((lcls == LineClass.PTWISE_FIXED).sum()),
        "fixed-I line": int((lcls == LineClass.FIXED_I).sum()),
        "fixed-II line": int((lcls == LineClass.FIXED_II).sum()),
        "ptwise-fixed plane": int((pcls == PlaneClass.PTWISE_FIXED).sum()),
        "fixed-II1 plane": int((pcls == PlaneClass.FIXED_II1).sum()),
        "fixed-II2 plane": int((pcls == PlaneClass.FIXED_II2).sum()),
        "fixed-III plane": int((pcls == PlaneClass.FIXED_III).sum()),
        "h1 plane": int((pcls == PlaneClass.H1).sum()),
        "h2 plane": int((pcls == PlaneClass.H2).sum()),
        "hwise-fixed 5-space": len(fs.hwise_spaces),
    }
    cells = [Cell("counts", k, "count", v, counts[k]) for k, v in count_expected(P).items()]

    containers: dict[str, np.ndarray] = {
        "ptwise-fixed line": lrows[lcls == LineClass.PTWISE_FIXED],
        "fixed-I line": lrows[lcls == LineClass.FIXED_I],
        "fixed-II line": lrows[lcls == LineClass.FIXED_II],
    }
    for name, t in _SPLANE_ROWS.items():
        containers[name] = ctx.splane_points[ctx.pg2_type == t]
    for name, c in _PLANE_ROWS.items():
        containers[name] = prows[pcls == c]
    containers = {k: _sample(v, sample, rng) for k, v in containers.items()}
    hw = np.array(fs.hwise_points)
    containers["hwise-fixed 5-space"] = hw

    for name, expected in point_composition_expected(P).items():
        rows = containers[name]
        comp = _composition(ptype, rows) if len(rows) else None
        for j, col in enumerate(POINT_COLUMNS):
            computed = _agree(comp[:, j]) if comp is not None else expected[j]
            cells.append(Cell("points", name, col, expected[j], computed, len(rows)))

    per_h = fs.lines_per_pg2_line
    for name, expected in line_composition_expected(P).items():
        if name in _HSPACE_ROWS:
            ids = np.flatnonzero(ctx.line_type == _HSPACE_ROWS[name])
            ids = _sample(ids, sample, rng)
            got = per_h[ids]
        else:
            rows = containers[name]
            got = fs.lines_in_rows(rows) if len(rows) else None
        n_cont = len(got) if got is not None else 0
        for j, col in enumerate(LINE_COLUMNS):
            computed = _agree(got[:, j]) if got is not None else expected[j]
            cells.append(Cell("lines", name, col, expected[j], computed, n_cont))
    return Census(P.q, counts, cells)


# hyperplane-wise fixed 5-spaces


def verify_hwise(ctx: ReductionContext) -> Report:
    """Characterization of the hwise-fixed 5-spaces and their mutual position."""
    fs = analyze(ctx)
    P = ctx.params
    rep = Report()
    rep.add("hwise-fixed 5-spaces / count", P.g, len(fs.hwise_spaces))
    rep.add("hwise-fixed 5-spaces / dimension", [5] * P.g, [S.dim for S in fs.hwise_spaces])
    fixed_lines, fixed_cls = fs.lines
    ptype = ctx.pg8_type
    for i, mask in enumerate(fs.hwise_masks):
        counts = np.bincount(ctx.point_to_splane[mask], minlength=ctx.pg2.size)
        per_type = {t: np.unique(counts[ctx.pg2_type == t]).tolist() for t in (1, 2, 3)}
        rep.add(f"hwise {i} / points per S_I-plane", [P.q + 1], per_type[1])
        rep.add(f"hwise {i} / points per S_II-plane", [1], per_type[2])
        rep.add(f"hwise {i} / points per S_III-plane", [0], per_type[3])
        # the q+1 points in an S_I-plane form a fixed-I line
        inside = mask[fixed_lines].all(axis=1)
        fi = fixed_lines[inside & (fixed_cls == LineClass.FIXED_I)]
        rep.add(f"hwise {i} / fixed-I lines, one per S_I-plane",
                sorted(np.flatnonzero(ctx.pg2_type == 1).tolist()),
                sorted(ctx.point_to_splane[fi[:, 0]].tolist()))
        sii = mask & (ctx.pg2_type[ctx.point_to_splane] == 2)
        rep.add(f"hwise {i} / its S_II points are II: points",
                [int(T.II_COLINEAR)], np.unique(ptype[sii]).tolist())
        contained = [int(mask[p].all()) for p in fs.ptwise_plane_points]
        disjoint = [int(not mask[p].any()) for p in fs.ptwise_plane_points]
        rep.add(f"hwise {i} / ptwise-fixed planes contained", P.n + 1, sum(contained))
        rep.add(f"hwise {i} / ptwise-fixed planes disjoint", P.g - (P.n + 1), sum(disjoint))
    # each I: / II: point and each fixed-I / fixed-II line lies in exactly one
    masks = np.array(fs.hwise_masks)
    col = np.isin(ptype, [T.I_COLINEAR, T.II_COLINEAR])
    rep.add("colinear points / hwise-fixed 5-spaces containing each", [1],
            np.unique(masks[:, col].sum(axis=0)).tolist())
    nonpt = fixed_lines[fixed_cls != LineClass.PTWISE_FIXED]
    per_line = np.stack([m[nonpt].all(axis=1) for m in fs.hwise_masks]).sum(axis=0)
    rep.add("fixed-I/II lines / hwise-fixed 5-spaces containing each", [1], np.unique(per_line).tolist())
    if P.g == 3:
        pts = fs.ptwise_plane_points
        for a, b in itertools.combinations(range(3), 2):
            common = np.flatnonzero(masks[a] & masks[b])
            match = [int(np.array_equal(common, p)) for p in pts]
            rep.add(f"hwise {a} and {b} / meet in a ptwise-fixed plane", 1, sum(match))
        rep.add("hwise / triple intersection", 0, int((masks[0] & masks[1] & masks[2]).sum()))
    return rep


def sigma3_spaces(ctx: ReductionContext, limit: int | None = None, seed: int = 0):
    """Pairs ``(hwise index, Type-I line id)`` whose intersection is a 3-space."""
    fs = analyze(ctx)
    pairs = [(i, int(l)) for i in range(len(fs.hwise_spaces))
             for l in np.flatnonzero(ctx.line_type == PointType2.I)]
    if limit is not None and len(pairs) > limit:
        rng = np.random.default_rng(seed)
        pairs = [pairs[j] for j in sorted(rng.choice(len(pairs), size=limit, replace=False))]
    return pairs


def verify_intersections_with_hspaces(ctx: ReductionContext, limit: int | None = None,
                                      seed: int = 0) -> Report:
    """Composition of (hwise-fixed 5-space) meet (H-5-space) for each H type."""
    fs = analyze(ctx)
    P = ctx.params
    q, n = P.q, P.n
    rep = Report()
    rng = np.random.default_rng(seed)
    lrows, lcls = fs.lines
    expected = {
        PointType2.I: (3, ((q + 1) * (n + 1), (q + 1) * (q - n), 0, q**3 - q, 0, 0),
                       (n + 1, q + 1, (q**3 - q) // (q - n))),
        PointType2.II: (2, (n + 1, q - n, 0, q * q, 0, 0), (0, 1, 0)),
        PointType2.III: (2, (0, 0, 0, q * q + q + 1, 0, 0), (0, 0, 0)),
    }
    for t, (dim, comp, lines) in expected.items():
        ids = np.flatnonzero(ctx.line_type == t)
        ids = _sample(ids, limit, rng)
        dims, comps, lcounts = set(), set(), set()
        for i, mask in enumerate(fs.hwise_masks):
            for lid in ids:
                pts = ctx.h_space_points(int(lid))
                common = pts[mask[pts]]
                k = len(common)
                dims.add(int(round(np.log(k * (q - 1) + 1) / np.log(q))) - 1)
                comps.add(tuple(np.bincount(ctx.pg8_type[common], minlength=6).tolist()))
                inside = np.zeros(ctx.pg8.size, dtype=bool)
                inside[common] = True
                got = np.bincount(lcls[inside[lrows].all(axis=1)], minlength=3)
                lcounts.add(tuple(got.tolist()))
        name = {1: "H_I", 2: "H_II", 3: "H_III"}[int(t)]
        rep.add(f"hwise meet {name} / dimension", [dim], sorted(dims))
        rep.add(f"hwise meet {name} / point types", [comp], sorted(comps))
        rep.add(f"hwise meet {name} / fixed lines", [lines], sorted(lcounts))
    return rep


# reguli and congruences


def transversals(space: ProjectiveSpace, L1: Subspace, L2: Subspace, L3: Subspace) -> list[Subspace]:
    """The q+1 lines meeting three pairwise skew lines of a 3-space."""
    out = []
    for x in space.vectors_of(L1):
        Y = space.meet(space.span(x, L2), L3)
        if Y is None or Y.dim != 0:
            raise ValueError("lines are not pairwise skew in a common 3-space")
        out.append(space.span(x, Y))
    return out


def _meets(space: ProjectiveSpace, a: Subspace, b: Subspace) -> bool:
    return space.meet(a, b) is not None


def verify_regulus(space: ProjectiveSpace, lines: list[Subspace]) -> tuple[bool, list[Subspace]]:
    """Whether ``lines`` (q+1 pairwise disjoint lines) form a regulus.

    Returns the verdict and the common transversals (the opposite regulus
    when the verdict is positive).
    """
    q = space.field.order
    if len(lines) != q + 1 or any(L.dim != 1 for L in lines):
        return False, []
    if space.span(*lines).dim != 3:
        return False, []
    if any(_meets(space, a, b) for a, b in itertools.combinations(lines, 2)):
        return False, []
    trans = transversals(space, *lines[:3])
    common = [t for t in trans if all(_meets(space, t, L) for L in lines[3:])]
    return len(common) == q + 1, common


def _row_key(row) -> tuple[int, ...]:
    return tuple(int(x) for x in row)


def congruence_classify(ctx: ReductionContext, hwise_index: int, h_line: int,
                        samples: int = 20, seed: int = 0) -> Congruence:
    """Classify the fixed-I and fixed-II lines of (hwise-fixed 5-space) meet
    (H_I-5-space of ``h_line``) as a linear congruence of that 3-space."""
    fs = analyze(ctx)
    space = ctx.pg8
    q = ctx.params.q
    rng = np.random.default_rng(seed)
    pts = ctx.h_space_points(h_line)
    pts = pts[fs.hwise_masks[hwise_index][pts]]
    if len(pts) != q**3 + q**2 + q + 1:
        raise ClassificationError("intersection is not a 3-space")
    inside = fs.mask(pts)
    lrows, lcls = fs.lines
    in3 = inside[lrows].all(axis=1)
    family = lrows[in3 & (lcls != LineClass.PTWISE_FIXED)]
    axes = lrows[in3 & (lcls == LineClass.PTWISE_FIXED)]
    keys = {_row_key(r) for r in family}
    subs = [fs.line_subspace(r) for r in family]

    if len(axes) == 0:
        covered = np.unique(family)
        if len(family) != q * q + 1 or len(covered) != len(pts):
            raise ClassificationError("no axis but not a spread")
        for _ in range(samples):
            i, j, k = rng.choice(len(subs), size=3, replace=False)
            reg = transversals(space, *transversals(space, subs[i], subs[j], subs[k])[:3])
            if not all(_row_key(space.points_of(L)) in keys for L in reg):
                raise ClassificationError("spread is not regular")
        return Congruence(CongruenceKind.ELLIPTIC)

    if len(axes) == 1:
        axis = axes[0]
        ok = len(family) == q * q + q
        ok &= all(np.intersect1d(r, axis).size == 1 for r in family)
        for a, b in itertools.combinations(family, 2):
            common = np.intersect1d(a, b)
            ok &= common.size == 0 or (common.size == 1 and common[0] in axis)
        fi = [fs.line_subspace(r) for r in lrows[in3 & (lcls == LineClass.FIXED_I)]]
        ok &= verify_regulus(space, fi)[0]
        if not ok:
            raise ClassificationError("one axis but not a parabolic congruence")
        return Congruence(CongruenceKind.PARABOLIC, (fs.line_subspace(axis),))

    if len(axes) == 2:
        a1, a2 = axes
        joins = {_row_key(space.points_of(space.span(space.vectors[x], space.vectors[y])))
                 for x in a1 for y in a2}
        if np.intersect1d(a1, a2).size or joins != keys:
            raise ClassificationError("two axes but not a hyperbolic congruence")
        return Congruence(CongruenceKind.HYPERBOLIC,
                          (fs.line_subspace(a1), fs.line_subspace(a2)))
    raise ClassificationError(f"{len(axes)} pointwise fixed lines in a 3-space")


# Segre structures


def verify_segre_structure(ctx: ReductionContext, samples: int = 5, seed: int = 0) -> Report:
    fs = analyze(ctx)
    P = ctx.params
    q, n, v = P.q, P.n, P.v
    space = ctx.pg8
    rep = Report()
    lrows, lcls = fs.lines
    ruling = [space.points_of(S) for S in ctx.subplane_ruling_planes]
    ptw_keys = {_row_key(p) for p in fs.ptwise_plane_points}
    for i, mask in enumerate(fs.hwise_masks):
        fi = lrows[(lcls == LineClass.FIXED_I) & mask[lrows].all(axis=1)]
        rep.add(f"hwise {i} / fixed-I lines", v, len(fi))
        inside = [r for r in ruling if mask[r].all()]
        rep.add(f"hwise {i} / subplane ruling planes inside", q + 1, len(inside))
        union = np.unique(np.concatenate(inside)) if inside else np.array([])
        rep.add(f"hwise {i} / ruling planes pairwise disjoint", (q + 1) * v, len(union))
        meets = {int(np.intersect1d(r, l).size) for r in inside for l in fi}
        rep.add(f"hwise {i} / each ruling plane meets each fixed-I line once", [1], sorted(meets))
        rep.add(f"hwise {i} / ruling planes that are ptwise-fixed", n + 1,
                sum(_row_key(r) in ptw_keys for r in inside))

    rng = np.random.default_rng(seed)
    prows, _ = fs.planes
    idx = fs.triangle_plane_index
    gammas = np.flatnonzero(ctx.pg2_type == PointType2.III)
    gammas = gammas[np.sort(rng.choice(len(gammas), size=min(samples, len(gammas)), replace=False))]
    for G in gammas:
        gamma = ctx.splane_points[G]
        planes = prows[np.unique(idx[gamma])]
        tag = f"S_III-plane {int(G)}"
        rep.add(f"{tag} / fixed-III planes meeting it", v, len(planes))
        rep.add(f"{tag} / pairwise disjoint", v * v, len(np.unique(planes)))
        for k in range(3):
            m = fs.mask(ctx.sigma_power(k)[gamma])
            rep.add(f"{tag} / each meets its sigma^{k} image once", [1],
                    np.unique(m[planes].sum(axis=1)).tolist())
        for j, ptw in enumerate(fs.ptwise_plane_points):
            m = fs.mask(ptw)
            hits = [r[m[r]] for r in planes]
            rep.add(f"{tag} / meets ptwise-fixed plane {j} once", [1],
                    sorted({len(h) for h in hits}))
            rep.add(f"{tag} / distinct points of ptwise-fixed plane {j}", v,
                    len({int(h[0]) for h in hits if len(h)}))
    return rep


def verify_pifix_line_structure(ctx: ReductionContext, samples: int = 20, seed: int = 0) -> Report:
    """Fixed-I and fixed-II lines inside each hwise-fixed 5-space."""
    fs = analyze(ctx)
    P = ctx.params
    q, n, v = P.q, P.n, P.v
    space = ctx.pg8
    rep = Report()
    rng = np.random.default_rng(seed)
    lrows, lcls = fs.lines
    ptw_masks = [fs.mask(p) for p in fs.ptwise_plane_points]
    for i, mask in enumerate(fs.hwise_masks):
        fam = lrows[(lcls != LineClass.PTWISE_FIXED) & mask[lrows].all(axis=1)]
        keys = {_row_key(r) for r in fam}
        tag = f"hwise {i}"
        if n == -1:
            rep.add(f"{tag} / line count", q**4 + q * q + 1, len(fam))
            rep.add(f"{tag} / lines partition the 5-space", int(mask.sum()), len(np.unique(fam)))
            subs = [fs.line_subspace(r) for r in fam]
            ok = 0
            for _ in range(samples):
                a, b = rng.choice(len(subs), size=2, replace=False)
                S3 = space.span(subs[a], subs[b])
                m3 = fs.mask(space.points_of(S3))
                in3 = [j for j, r in enumerate(fam) if m3[r].all()]
                c = [j for j in in3 if j not in (a, b)][0]
                reg = transversals(space, *transversals(space, subs[a], subs[b], subs[c])[:3])
                ok += len(in3) == q * q + 1 and all(_row_key(space.points_of(L)) in keys for L in reg)
            rep.add(f"{tag} / sampled reguli contained", samples, ok)
        elif n == 0:
            pm = ptw_masks[0]
            rep.add(f"{tag} / line count", v * q * q, len(fam))
            rep.add(f"{tag} / every line meets the ptwise-fixed plane", [1],
                    np.unique(pm[fam].sum(axis=1)).tolist())
            pi_fix = fs.ptwise_planes[0]
            groups: dict[Subspace, list[np.ndarray]] = {}
            for r in fam:
                S3 = space.span(pi_fix, space.vectors[r[~pm[r]][0]])
                groups.setdefault(S3, []).append(r)
            rep.add(f"{tag} / 3-spaces through the ptwise-fixed plane", v, len(groups))
            rep.add(f"{tag} / lines per such 3-space", [q * q], sorted({len(g) for g in groups.values()}))
            vertex = set()
            for g in groups.values():
                common = g[0]
                for r in g[1:]:
                    common = np.intersect1d(common, r)
                vertex.add(len(common))
            rep.add(f"{tag} / lines of a 3-space share one vertex", [1], sorted(vertex))
        else:
            inside = [p for p in fs.ptwise_plane_points if mask[p].all()]
            a, b = inside
            joins = {_row_key(space.points_of(space.span(space.vectors[x], space.vectors[y])))
                     for x in a for y in b}
            rep.add(f"{tag} / line count", v * v, len(fam))
            rep.add(f"{tag} / lines = joins of the two ptwise-fixed planes", True, joins == keys)
    return rep


def verify_fixed_i_reguli(ctx: ReductionContext, h_line: int) -> Report:
    """Fixed-I lines in the H_I-5-space of ``h_line``: g reguli, each opposite
    regulus holding n+1 ptwise-fixed lines; for g = 3 the reguli pairwise
    share a ptwise-fixed line."""
    fs = analyze(ctx)
    P = ctx.params
    space = ctx.pg8
    rep = Report()
    pts = ctx.h_space_points(h_line)
    hmask = fs.mask(pts)
    lrows, lcls = fs.lines
    ptw = {_row_key(r) for r in lrows[lcls == LineClass.PTWISE_FIXED]}
    fi_all = lrows[(lcls == LineClass.FIXED_I) & hmask[lrows].all(axis=1)]
    rep.add("H_I / fixed-I lines", P.g * (P.q + 1), len(fi_all))
    quadrics = []
    for i, mask in enumerate(fs.hwise_masks):
        fi = fi_all[mask[fi_all].all(axis=1)]
        ok, opposite = verify_regulus(space, [fs.line_subspace(r) for r in fi])
        rep.add(f"H_I meet hwise {i} / fixed-I lines form a regulus", True, ok)
        opp_rows = [space.points_of(L) for L in opposite]
        rep.add(f"H_I meet hwise {i} / ptwise-fixed lines in opposite regulus", P.n + 1,
                sum(_row_key(r) in ptw for r in opp_rows))
        quadrics.append(np.unique(fi))
    if P.g == 3:
        for a, b in itertools.combinations(range(3), 2):
            common = _row_key(np.intersect1d(quadrics[a], quadrics[b]))
            rep.add(f"reguli {a} and {b} / share exactly a ptwise-fixed line", True, common in ptw)
    return rep
