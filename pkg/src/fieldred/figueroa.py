"""The Figueroa plane FIG(q^3) and its Fig-blocks in the PG(8, q) model.

Points of FIG(q^3) are the points of PG(2, q^3).  Type-I and Type-II lines are
kept; each Type-III line ``m`` is replaced by the Fig-block of the unique
Type-III point ``G`` with ``G^phi G^phi^2 = m``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fixed import analyze
from .gf import FiniteField
from .linalg import matmul, nullspace, rank
from .pg import Subspace, projective_space
from .reduction import PointType2, PointType8, ReductionContext, kernel_pairs
from .report import Report

__all__ = [
    "FigBlock",
    "IncidencePlane",
    "AxiomViolation",
    "e_set",
    "f_set",
    "fig_block",
    "block_generators",
    "build_figueroa",
    "conic_through",
    "DegenerateConic",
    "Scroll",
    "scroll_representation",
    "verify_scroll",
    "verify_figueroa",
]


class AxiomViolation(AssertionError):
    """A projective-plane axiom fails; ``witness`` holds an offending pair."""

    def __init__(self, message: str, witness: tuple[int, int]):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class DegenerateConic(ValueError):
    pass


# Fig-blocks


def _require_type3(ctx: ReductionContext, G: int) -> None:
    if ctx.pg2_type[G] != PointType2.III:
        raise ValueError(f"point {G} is not of Type III")


def m_line(ctx: ReductionContext, G: int) -> int:
    phi = ctx.phi_image
    return ctx.join(int(phi[G]), int(phi[phi[G]]))


def e_set(ctx: ReductionContext, G: int) -> np.ndarray:
    """Type-II points of the line ``G^phi G^phi^2``."""
    _require_type3(ctx, G)
    pts = ctx.line_points[m_line(ctx, G)]
    return pts[ctx.pg2_type[pts] == PointType2.II]


def f_set(ctx: ReductionContext, G: int) -> np.ndarray:
    """``l^phi meet l^phi^2`` over the Type-III lines ``l`` through ``G``."""
    _require_type3(ctx, G)
    phi = ctx.phi_image
    lines = ctx.lines_through(G)
    lines = lines[ctx.line_type[lines] == PointType2.III]
    return np.unique(ctx.meet_lines_many(phi[lines], phi[phi[lines]]))


@dataclass(frozen=True, eq=False)
class FigBlock:
    g_point: int
    points: np.ndarray  # sorted
    e: np.ndarray
    f: np.ndarray


def fig_block(ctx: ReductionContext, G: int) -> FigBlock:
    e, f = e_set(ctx, G), f_set(ctx, G)
    return FigBlock(G, np.union1d(e, f), e, f)


def block_generators(ctx: ReductionContext) -> np.ndarray:
    """``gen[m]`` is the Type-III point ``G`` with ``G^phi G^phi^2 = m`` for
    every Type-III line ``m``, and -1 for other lines."""
    phi = ctx.phi_image
    G = np.flatnonzero(ctx.pg2_type == PointType2.III)
    m = ctx.join_many(phi[G], phi[phi[G]])
    if len(np.unique(m)) != len(m):
        raise AssertionError("two Type-III points give the same line")
    if not (ctx.line_type[m] == PointType2.III).all():
        raise AssertionError("G^phi G^phi^2 is not a Type-III line")
    gen = np.full(ctx.pg2.size, -1, dtype=np.int64)
    gen[m] = G
    return gen


# incidence planes


class IncidencePlane:
    def __init__(self, num_points: int, lines: list[np.ndarray]):
        self.num_points = num_points
        self.lines = [np.asarray(l, dtype=np.int64) for l in lines]

    def line_counts(self) -> np.ndarray:
        """Number of lines through each point."""
        return np.bincount(np.concatenate(self.lines), minlength=self.num_points)

    def check_axioms(self, chunk: int = 512) -> int:
        """Raise ``AxiomViolation`` unless this is a projective plane; return its order.

        For every point the lines through it are expanded into their points:
        the point itself must appear on each of them and every other point
        exactly once.  The same is done for lines.
        """
        sizes = np.array([len(l) for l in self.lines])
        n = int(sizes[0]) - 1
        if not (sizes == n + 1).all():
            raise AxiomViolation("line of wrong size", (int(np.argmax(sizes != n + 1)), -1))
        per_point = self.line_counts()
        if (per_point != n + 1).any():
            raise AxiomViolation("point on wrong number of lines", (int(np.argmax(per_point != n + 1)), -1))
        L = np.array(self.lines, dtype=np.int64)
        order = np.argsort(L.ravel(), kind="stable")
        P2L = (order // (n + 1)).reshape(self.num_points, n + 1)
        for what, A, B in (("two points", P2L, L), ("two lines", L, P2L)):
            K = len(A)
            for start in range(0, K, chunk):
                idx = np.arange(start, min(start + chunk, K))
                rows = B[A[idx]].reshape(len(idx), -1) + (idx - start)[:, None] * K
                cnt = np.bincount(rows.ravel(), minlength=len(idx) * K).reshape(len(idx), K)
                cnt[idx - start, idx] -= n
                bad = np.argwhere(cnt != 1)
                if len(bad):
                    i, j = bad[0]
                    raise AxiomViolation(f"{what} not joined by exactly one element",
                                         (int(i) + start, int(j)))
        return n


def build_figueroa(ctx: ReductionContext) -> IncidencePlane:
    lt = ctx.line_type
    gen = block_generators(ctx)
    lines = []
    for m in range(ctx.pg2.size):
        if lt[m] == PointType2.III:
            lines.append(fig_block(ctx, int(gen[m])).points)
        else:
            lines.append(ctx.line_points[m])
    return IncidencePlane(ctx.pg2.size, lines)


def verify_figueroa(ctx: ReductionContext) -> Report:
    q = ctx.q
    rep = Report()
    plane = build_figueroa(ctx)
    lt = ctx.line_type
    rep.add(f"Figueroa / q={q} / points", q**6 + q**3 + 1, plane.num_points)
    rep.add(f"Figueroa / q={q} / lines", q**6 + q**3 + 1, len(plane.lines))
    rep.add(f"Figueroa / q={q} / line types I, II, Fig",
            [q * q + q + 1, (q * q + q + 1) * (q**3 - q), q**3 * (q - 1) ** 2 * (q + 1)],
            [int((lt == t).sum()) for t in (1, 2, 3)])
    rep.add(f"Figueroa / q={q} / points per line", [q**3 + 1], np.unique([len(l) for l in plane.lines]))
    rep.add(f"Figueroa / q={q} / lines per point", [q**3 + 1],
            np.unique(plane.line_counts()))
    try:
        order = plane.check_axioms()
        rep.add(f"Figueroa / q={q} / projective plane axioms", q**3, order)
    except AxiomViolation as exc:
        rep.add(f"Figueroa / q={q} / projective plane axioms", "hold", str(exc))

    gen = block_generators(ctx)
    phi = ctx.phi_image
    m3 = np.flatnonzero(lt == PointType2.III)
    sizes_e, sizes_f, on_m, overlap = set(), set(), set(), 0
    g_out = gphi_in = True
    not_pg_line = 0
    for m in m3:
        G = int(gen[m])
        b = fig_block(ctx, G)
        sizes_e.add(len(b.e))
        sizes_f.add(len(b.f))
        overlap += len(np.intersect1d(b.e, b.f))
        on_m.add(len(np.intersect1d(b.points, ctx.line_points[m])))
        g_out &= G not in b.points
        gphi_in &= bool(np.isin([phi[G], phi[phi[G]]], b.f).all())
        pg_line = ctx.line_points[ctx.join(int(b.points[0]), int(b.points[1]))]
        not_pg_line += not np.array_equal(b.points, pg_line)
    rep.add(f"Figueroa / q={q} / |E_G|", [q * q + q + 1], sorted(sizes_e))
    rep.add(f"Figueroa / q={q} / |F_G|", [q**3 - q * q - q], sorted(sizes_f))
    rep.add(f"Figueroa / q={q} / E_G and F_G disjoint", 0, overlap)
    rep.add(f"Figueroa / q={q} / block meets m_G in E_G, G^phi, G^phi^2", [q * q + q + 3], sorted(on_m))
    rep.check(f"Figueroa / q={q} / G not in its block", g_out)
    rep.check(f"Figueroa / q={q} / G^phi, G^phi^2 in F_G", gphi_in)
    rep.add(f"Figueroa / q={q} / Fig-blocks that are not PG lines", len(m3), not_pg_line)
    return rep


# conics


def _conic_values(F: FiniteField, pts: np.ndarray) -> np.ndarray:
    """Monomials x^2, y^2, z^2, xy, xz, yz at each row of ``pts``."""
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    m = F.mul
    return np.stack([m[x, x], m[y, y], m[z, z], m[x, y], m[x, z], m[y, z]], axis=1)


def _polar_values(F: FiniteField, P: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Coefficients of ``Q(P + tR)`` in ``t``: a row linear in the conic coefficients.

    Given ``Q(P) = 0`` the restriction to the line PR has a double root at P
    iff this linear form vanishes, in every characteristic.
    """
    m, a = F.mul, F.add
    x, y, z = P
    u, v, w = R
    two = lambda s: a[s, s]
    return np.array([two(m[x, u]), two(m[y, v]), two(m[z, w]),
                     a[m[x, v], m[y, u]], a[m[x, w], m[z, u]], a[m[y, w], m[z, v]]])


def _other_point_on(F: FiniteField, line: np.ndarray, P: np.ndarray) -> np.ndarray:
    U, W = kernel_pairs(F, np.atleast_2d(line))
    space = projective_space(F, 2)
    return U[0] if space.point_id(U[0]) != space.point_id(P) else W[0]


def conic_through(F: FiniteField, P1, P2, P3, tangent2, tangent3) -> tuple[np.ndarray, np.ndarray]:
    """The conic of PG(2, F) through P1, P2, P3 tangent to the given lines at P2, P3.

    Lines are dual coordinate vectors.  Returns ``(coefficients, point IDs)``
    with coefficients ordered as x^2, y^2, z^2, xy, xz, yz.
    """
    space = projective_space(F, 2)
    P = [np.asarray(p, dtype=np.int64) for p in (P1, P2, P3)]
    rows = list(_conic_values(F, np.array(P)))
    for Q, t in ((P[1], tangent2), (P[2], tangent3)):
        t = np.asarray(t, dtype=np.int64)
        if matmul(F, Q[None], t[:, None])[0, 0] != 0:
            raise ValueError("tangent line does not pass through its point")
        rows.append(_polar_values(F, Q, _other_point_on(F, t, Q)))
    K = nullspace(F, np.array(rows))
    if K.shape[0] != 1:
        raise DegenerateConic(f"solution space has dimension {K.shape[0]}")
    c = K[0]
    vals = _conic_values(F, space.vectors)
    on = matmul(F, vals, c[:, None])[:, 0] == 0
    ids = np.flatnonzero(on)
    q = F.order
    if len(ids) != q + 1:
        raise DegenerateConic(f"{len(ids)} points instead of {q + 1}")
    # q + 1 points on one line would be a repeated line
    if rank(F, space.vectors[ids]) < 3:
        raise DegenerateConic("points are collinear")
    return c, ids


# the scroll


@dataclass(frozen=True, eq=False)
class Scroll:
    G: int
    gamma: Subspace
    P: int                      # chosen point of gamma
    pi: Subspace                # <P, P^sigma, P^sigma^2>
    A: int                      # fixed point of pi
    conic: np.ndarray           # PG(8, q) point IDs of the conic in pi
    family: list[Subspace]      # the planes of the opposite ruling system
    family_coords: np.ndarray   # (a:b:c) labels of ``family``
    D: list[Subspace]
    D_coords: np.ndarray
    beta: Subspace
    pi_fix: Subspace


def _opposite_ruling(ctx: ReductionContext, gamma: Subspace) -> tuple[list[Subspace], np.ndarray]:
    """Planes ``gamma (aI + bM + cM^2)`` for ``(a:b:c)`` in PG(2, q)."""
    F = ctx.spec.mid
    M = ctx.sigma.matrix
    M2 = matmul(F, M, M)
    I = np.eye(9, dtype=np.int64)
    labels = projective_space(F, 2).vectors
    out = []
    for a, b, c in labels:
        T = F.add[F.add[F.mul[int(a), I], F.mul[int(b), M]], F.mul[int(c), M2]]
        out.append(ctx.pg8.subspace(matmul(F, gamma.matrix, T)))
    return out, labels


def _require_hypothesis(ctx: ReductionContext) -> None:
    if ctx.q % 3 == 1:
        raise ValueError(f"q={ctx.q}: the scroll construction needs q not congruent to 1 mod 3")


def scroll_representation(ctx: ReductionContext, G: int, P: int | None = None) -> Scroll:
    """Build the planes beta and the scroll D for the Fig-block of ``G``.

    ``P`` is a PG(8, q) point of the spread plane of ``G`` (default: its
    smallest ID).
    """
    _require_hypothesis(ctx)
    _require_type3(ctx, G)
    F = ctx.spec.mid
    space = ctx.pg8
    M = ctx.sigma.matrix
    gamma = ctx.spread_plane(G)
    gamma_pts = ctx.splane_points[G]
    if P is None:
        P = int(gamma_pts.min())
    elif P not in gamma_pts:
        raise ValueError("P is not a point of the spread plane of G")
    u = space.vectors[P]
    u1 = matmul(F, u[None], M)[0]
    u2 = matmul(F, u1[None], M)[0]
    basis = np.array([u, u1, u2])
    pi = space.subspace(basis)
    fixed = np.flatnonzero(ctx.pg8_type == PointType8.FIXED)
    pi_pts = space.points_of(pi)
    A_ids = np.intersect1d(pi_pts, fixed)
    if len(A_ids) != 1:
        raise AssertionError(f"pi contains {len(A_ids)} fixed points")
    A = int(A_ids[0])

    # coordinates (a:b:c) in pi w.r.t. u, uM, uM^2
    coords = projective_space(F, 2)
    P1, P2, P3 = _coords_in(F, basis, space.vectors[A]), np.array([0, 1, 0]), np.array([0, 0, 1])
    # the tangent at P^sigma is the line P P^sigma (c = 0), at P^sigma^2 the line b = 0
    c, conic_ids = conic_through(F, P1, P2, P3, np.array([0, 0, 1]), np.array([0, 1, 0]))
    conic = space.ids(matmul(F, coords.vectors[conic_ids], basis))

    family, labels = _opposite_ruling(ctx, gamma)
    D_idx = [i for i, S in enumerate(family) if np.isin(conic, space.points_of(S)).any()]
    D = [family[i] for i in D_idx]

    fs = analyze(ctx)
    if len(fs.ptwise_planes) != 1:
        raise AssertionError("expected a unique ptwise-fixed plane")
    pi_fix = fs.ptwise_planes[0]

    m = m_line(ctx, G)
    h = ctx.h_space_points(m)
    ii_colinear = h[ctx.pg8_type[h] == PointType8.II_COLINEAR]
    beta = space.subspace(space.vectors[ii_colinear])
    return Scroll(G, gamma, P, pi, A, conic, family, labels, D, labels[D_idx], beta, pi_fix)


def _coords_in(F: FiniteField, basis: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Projective coordinates of ``x`` with respect to the rows of ``basis``."""
    K = nullspace(F, np.vstack([basis, x]).T)
    if K.shape[0] != 1 or K[0, -1] == 0:
        raise ValueError("vector is not in the span")
    return K[0, :-1]


def _plane_key(S: Subspace) -> tuple:
    return S.basis


def verify_scroll(ctx: ReductionContext, G: int, all_P: bool = False) -> Report:
    """Check the scroll description of the Fig-block of ``G``.

    With ``all_P`` every point of the spread plane of ``G`` is tried as the
    base point and the resulting scrolls are compared.
    """
    q = ctx.q
    tag = f"scroll / q={q} / G={G}"
    space = ctx.pg8
    sc = scroll_representation(ctx, G)
    rep = Report()
    block = fig_block(ctx, G)
    phi = ctx.phi_image

    fs = analyze(ctx)
    rows, cls = fs.planes
    fixed_iii = rows[cls == 4]
    gamma_pts = ctx.splane_points[G]
    meets = np.isin(fixed_iii, gamma_pts).any(axis=1)
    ruling = {tuple(r) for r in fixed_iii[meets]}
    M = ctx.sigma.matrix
    F = ctx.spec.mid
    spans = set()
    for P in gamma_pts:
        u = space.vectors[P]
        u1 = matmul(F, u[None], M)[0]
        spans.add(tuple(space.points_of(space.subspace([u, u1, matmul(F, u1[None], M)[0]]))))
    rep.add(f"{tag} / fixed-III planes meeting gamma", q * q + q + 1, len(ruling))
    rep.check(f"{tag} / they are the planes <P, P^sigma, P^sigma^2>", ruling == spans)

    fam_pts = [space.points_of(S) for S in sc.family]
    ok = all(len(np.intersect1d(a, np.array(b))) == 1 for a in fam_pts for b in ruling)
    rep.check(f"{tag} / opposite system meets each ruling plane in one point", ok)
    union = np.concatenate(fam_pts)
    rep.check(f"{tag} / opposite system planes pairwise disjoint", len(np.unique(union)) == len(union))

    rep.add(f"{tag} / |D|", q + 1, len(sc.D))
    D_pts = [space.points_of(S) for S in sc.D]
    keys = {_plane_key(S) for S in sc.D}
    gamma = sc.gamma
    named = {"gamma": gamma, "gamma^sigma": ctx.apply_sigma(gamma, 1),
             "gamma^sigma^2": ctx.apply_sigma(gamma, 2), "pi_fix": sc.pi_fix}
    for name, S in named.items():
        rep.add(f"{tag} / {name} in D", True, _plane_key(S) in keys)

    scroll_pts = np.concatenate(D_pts)
    conic_ok = True
    for r in ruling:
        hit = np.intersect1d(np.array(r), scroll_pts)
        conic_ok &= len(hit) == q + 1 and rank(F, space.vectors[hit]) == 3
    rep.check(f"{tag} / D meets each ruling plane in a non-degenerate conic", conic_ok)

    rep.add(f"{tag} / beta is a plane", 2, sc.beta.dim)
    beta_pts = space.points_of(sc.beta)
    rep.add(f"{tag} / B(beta) = E_G", block.e, ctx.back_map_B(beta_pts))
    rep.check(f"{tag} / beta in the opposite system",
              _plane_key(sc.beta) in {_plane_key(S) for S in sc.family})
    fix_key = _plane_key(sc.pi_fix)
    rest = [p for S, p in zip(sc.D, D_pts) if _plane_key(S) != fix_key]
    rest_pts = np.concatenate(rest) if rest else np.zeros(0, dtype=np.int64)
    rep.add(f"{tag} / B(D minus pi_fix) = F_G", block.f, ctx.back_map_B(rest_pts))

    carrier = np.union1d(beta_pts, rest_pts)
    special = {int(phi[G]), int(phi[phi[G]])}
    hits = {int(X): int(np.isin(ctx.splane_points[X], carrier).sum()) for X in block.points}
    rep.add(f"{tag} / block points off G^phi, G^phi^2 meet the carrier once",
            [1], sorted({h for X, h in hits.items() if X not in special}))

    if all_P:
        base = sorted(keys)
        same = all(sorted(_plane_key(S) for S in scroll_representation(ctx, G, int(P)).D) == base
                   for P in gamma_pts)
        rep.check(f"{tag} / D independent of the base point", same)
    return rep
