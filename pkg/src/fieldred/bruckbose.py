"""The Bruck-Bose model of PG(2, q^3) in PG(6, q) with the line at infinity z = 0.

Here phi is the diagonal map (x, y, z) -> (x^q, y^q, z^q), whose fixed points
form the subplane PG(2, q).  The affine point (x, y, 1) becomes
(theta(x), theta(y), 1) and phi becomes diag(A, A, 1) with ``A`` the Frobenius
matrix.  The quadric Q: x1 y2 - x2 y1 = 0 uses the digit coordinates
(x0, x1, x2, y0, y1, y2, z).
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

from .gf import FieldSpec, field_tower, frobenius_matrix, prime_power
from .linalg import matmul, nullspace, rank
from .pg import Collineation, Subspace, projective_space
from .reduction import PointType2, ReductionContext
from .report import Report

__all__ = [
    "BruckBoseContext",
    "bruck_bose",
    "f_eval",
    "beta_constant",
    "quadric_values",
    "verify_quadric",
    "verify_quadric_sections",
    "verify_fixed_structure",
    "verify_slice",
]

# Q(v) = v1 v5 - v2 v4: polar form matrix pairs
_Q_PAIRS = ((1, 5, 1), (2, 4, -1))


def f_eval(spec: FieldSpec, x: int, y: int) -> int:
    """``(x y^q + x^q y^q^2 + x^q^2 y) - (x y^q^2 + x^q y + x^q^2 y^q)`` in GF(q^3)."""
    T = spec.top
    fr = T.frob
    x1, x2, y1, y2 = fr[x], fr[fr[x]], fr[y], fr[fr[y]]
    pos = T.add[T.add[T.mul[x, y1], T.mul[x1, y2]], T.mul[x2, y]]
    neg = T.add[T.add[T.mul[x, y2], T.mul[x1, y]], T.mul[x2, y1]]
    return T.sub[pos, neg]


def beta_constant(spec: FieldSpec) -> int:
    """``f`` at a pair with ``x1 y2 - x2 y1 = 1``: x = tau, y = tau^2."""
    tau = spec.tau
    return int(f_eval(spec, tau, spec.top.mul[tau, tau]))


def quadric_values(F, V: np.ndarray) -> np.ndarray:
    return F.sub[F.mul[V[:, 1], V[:, 5]], F.mul[V[:, 2], V[:, 4]]]


def _diag(F, *blocks) -> np.ndarray:
    n = sum(len(b) for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        out[i:i + len(b), i:i + len(b)] = b
        i += len(b)
    return out


class BruckBoseContext:
    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.q = spec.q
        self.F = spec.mid
        self.params = spec.params
        A = frobenius_matrix(spec)
        self.phi6 = Collineation(_diag(self.F, A, A, np.eye(1, dtype=np.int64)), 0)
        # PG(2, q^3) with the diagonal phi, reusing the generic type machinery
        self.plane = ReductionContext(spec, spec.params, Collineation(np.eye(3, dtype=np.int64), 1),
                                      Collineation(_diag(self.F, A, A, A), 0))
        self.space = projective_space(self.F, 6)

    # coordinates

    @cached_property
    def to_pg2(self) -> np.ndarray:
        """PG(2, q^3) point of each PG(6, q) point; points of Sigma_inf map to
        the point at infinity whose spread plane contains them."""
        V = self.space.vectors
        q = self.q
        x = V[:, 0] + q * V[:, 1] + q * q * V[:, 2]
        y = V[:, 3] + q * V[:, 4] + q * q * V[:, 5]
        return self.plane.pg2.ids(np.stack([x, y, V[:, 6]], axis=1))

    @cached_property
    def affine(self) -> np.ndarray:
        return self.space.vectors[:, 6] != 0

    @cached_property
    def point_type(self) -> np.ndarray:
        """Type (I, II, III) of the PG(2, q^3) point of each PG(6, q) point."""
        return self.plane.pg2_type[self.to_pg2]

    def affine_id(self, x: int, y: int) -> int:
        d = self.spec.top.digits
        return self.space.point_id(np.concatenate([d[x], d[y], [1]]))

    @cached_property
    def pi_fix(self) -> Subspace:
        e = np.eye(7, dtype=np.int64)
        return self.space.subspace(e[[0, 3, 6]])

    def splane(self, pid2: int) -> np.ndarray:
        """PG(6, q) points of the spread plane at infinity for a point of z = 0."""
        return np.flatnonzero(~self.affine & (self.to_pg2 == pid2))

    @cached_property
    def on_quadric(self) -> np.ndarray:
        return quadric_values(self.F, self.space.vectors) == 0

    @cached_property
    def line_at_infinity(self) -> int:
        return self.plane.pg2.point_id(np.array([0, 0, 1]))

    # phi

    @cached_property
    def phi_raw(self) -> tuple[np.ndarray, np.ndarray]:
        V = self.space.vectors
        w1 = matmul(self.F, V, self.phi6.matrix)
        return w1, matmul(self.F, w1, self.phi6.matrix)

    @cached_property
    def phi_image(self) -> np.ndarray:
        return self.space.ids(self.phi_raw[0])

    @cached_property
    def colinear_orbit(self) -> np.ndarray:
        F = self.F
        V = self.space.vectors
        w1, w2 = self.phi_raw
        out = np.zeros(len(V), dtype=bool)
        for a, b in itertools.product(range(F.order), repeat=2):
            out |= (F.add[F.mul[a, V], F.mul[b, w1]] == w2).all(axis=1)
        return out

    @cached_property
    def fixed_points(self) -> np.ndarray:
        return np.flatnonzero(self.phi_image == np.arange(self.space.size))

    @cached_property
    def fixed_lines(self) -> tuple[np.ndarray, np.ndarray]:
        """``(rows, ptwise)``: point IDs of every phi-fixed line, and whether
        it is fixed pointwise."""
        F, S = self.F, self.space
        fixed = np.zeros(S.size, dtype=bool)
        fixed[self.fixed_points] = True
        rows = set()
        movers = np.flatnonzero(self.colinear_orbit & ~fixed)
        for p in movers:
            rows.add(tuple(S.points_of(S.subspace(S.vectors[[p, self.phi_image[p]]]))))
        # pointwise fixed lines lie in the eigenspaces
        M = self.phi6.matrix
        for lam in range(1, F.order):
            K = nullspace(F, F.sub[M.T, F.mul[lam, np.eye(7, dtype=np.int64)]])
            if K.shape[0] >= 2:
                E = S.subspace(K)
                pts = S.points_of(E)
                for a, b in itertools.combinations(pts, 2):
                    rows.add(tuple(S.points_of(S.subspace(S.vectors[[a, b]]))))
        rows = np.array(sorted(rows), dtype=np.int64)
        return rows, fixed[rows].all(axis=1)


@lru_cache(maxsize=None)
def bruck_bose(q: int) -> BruckBoseContext:
    return BruckBoseContext(field_tower(*prime_power(q)))


def _radical(F, rows: np.ndarray) -> np.ndarray:
    """Vectors in the row span of ``rows`` that are in the radical of the
    polar form of Q restricted to that span (as coefficient vectors)."""
    k = len(rows)
    G = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            G[i, j] = _polar(F, rows[i], rows[j])
    return nullspace(F, G)


def _polar(F, u: np.ndarray, w: np.ndarray) -> int:
    s = 0
    for a, b, sign in _Q_PAIRS:
        t = F.add[F.mul[u[a], w[b]], F.mul[u[b], w[a]]]
        s = F.add[s, t] if sign > 0 else F.sub[s, t]
    return int(s)


def _singular_points(bb: BruckBoseContext, rows: np.ndarray) -> np.ndarray:
    """Points of the span of ``rows`` that are singular points of Q restricted there."""
    F, S = bb.F, bb.space
    K = _radical(F, rows)
    if K.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    pts = S.vectors_of(S.subspace(matmul(F, K, rows)))
    ids = S.ids(pts, normalized=True)
    return np.sort(ids[bb.on_quadric[ids]])


def verify_quadric(q: int) -> Report:
    bb = bruck_bose(q)
    spec, F, S = bb.spec, bb.F, bb.space
    T = spec.top
    rep = Report()
    tag = f"degenerate quadric / q={q}"

    # f takes values in GF(q) and equals (x1 y2 - x2 y1) beta
    beta = beta_constant(spec)
    rep.check(f"{tag} / beta in GF(q), nonzero", 0 < beta < q)
    xs = np.repeat(np.arange(T.order), T.order)
    ys = np.tile(np.arange(T.order), T.order)
    f = f_eval(spec, xs, ys)
    rep.add(f"{tag} / f(x, y) in GF(q) for all pairs", T.order**2, int((f < q).sum()))
    dx, dy = T.digits[xs], T.digits[ys]
    det = F.sub[F.mul[dx[:, 1], dy[:, 2]], F.mul[dx[:, 2], dy[:, 1]]]
    rep.add(f"{tag} / f = (x1 y2 - x2 y1) beta", T.order**2, int((F.mul[det, beta] == f).sum()))

    # affine quadric points against the orbit classification
    aff = bb.affine
    quad = np.flatnonzero(aff & bb.on_quadric)
    types = np.flatnonzero(aff & (bb.point_type != PointType2.III))
    rep.add(f"{tag} / affine zeros of f", int((f == 0).sum()), len(quad))
    rep.add(f"{tag} / affine quadric points = affine I- and II-points", types, quad)

    sing = _singular_points(bb, np.eye(7, dtype=np.int64))
    rep.add(f"{tag} / singular locus = pi_fix", S.points_of(bb.pi_fix), sing)
    e = np.eye(7, dtype=np.int64)[[1, 2, 4, 5]]
    base = S.vectors_of(S.subspace(e))
    base_ids = S.ids(base, normalized=True)
    rep.add(f"{tag} / base quadric points", (q + 1) ** 2, int(bb.on_quadric[base_ids].sum()))
    rep.add(f"{tag} / base quadric non-singular", 0, len(_singular_points(bb, e)))
    return rep


def _span_ids(bb: BruckBoseContext, ids: np.ndarray) -> np.ndarray:
    S = bb.space
    return S.points_of(S.subspace(S.vectors[ids]))


def verify_quadric_sections(q: int) -> Report:
    bb = bruck_bose(q)
    F, S = bb.F, bb.space
    plane = bb.plane
    rep = Report()
    tag = f"quadric sections / q={q}"
    linf = bb.line_at_infinity
    at_inf = plane.line_points[linf]
    aff, onq, ptype = bb.affine, bb.on_quadric, bb.point_type

    ok_i = ok_ii = True
    for P in at_inf:
        pts = bb.splane(int(P))
        hit = pts[onq[pts]]
        if plane.pg2_type[P] == PointType2.I:
            ok_i &= len(hit) == len(pts)
        else:
            ok_ii &= len(hit) == q + 1 and rank(F, S.vectors[hit]) == 3
    rep.check(f"{tag} / Q contains each S_I-plane at infinity", ok_i)
    rep.check(f"{tag} / Q meets each S_II-plane at infinity in a conic", ok_ii)

    c2 = c3 = c4 = 0
    bad2, bad3, bad4 = [], [], []
    for P in at_inf:
        P = int(P)
        inf_pts = bb.splane(P)
        conic = inf_pts[onq[inf_pts]]
        for lid in plane.lines_through(P):
            if lid == linf:
                continue
            lt = plane.line_type[lid]
            sp = np.flatnonzero(aff & np.isin(bb.to_pg2, plane.line_points[lid]))
            ii = sp[ptype[sp] == PointType2.II]
            i_ = sp[ptype[sp] == PointType2.I]
            if plane.pg2_type[P] == PointType2.I and lt == PointType2.II:
                c2 += 1
                # q^2 II-points spanning a plane whose affine points they are
                span = _span_ids(bb, ii) if len(ii) else np.zeros(0, dtype=np.int64)
                good = len(ii) == q * q and len(i_) == 0 and len(span) == q * q + q + 1 \
                    and np.array_equal(span[aff[span]], ii)
                if not good:
                    bad2.append(int(lid))
            elif plane.pg2_type[P] == PointType2.II and lt == PointType2.II:
                c3 += 1
                frame = np.concatenate([i_, conic])
                rows = S.subspace(S.vectors[np.concatenate([sp, inf_pts])]).matrix
                good = len(i_) == 1 and len(ii) == q * q - 1 and \
                    np.array_equal(_singular_points(bb, rows), i_)
                # every affine point lies on a line from the vertex to the conic at infinity
                cone: set[int] = set()
                if good:
                    for c in conic:
                        cone.update(int(x) for x in _span_ids(bb, np.array([i_[0], c])))
                    good = set(np.concatenate([i_, ii]).tolist()) | set(conic.tolist()) == cone
                if not good:
                    bad3.append(int(lid))
            elif plane.pg2_type[P] == PointType2.II and lt == PointType2.III:
                c4 += 1
                rows = S.subspace(S.vectors[np.concatenate([sp, inf_pts])]).matrix
                on = np.concatenate([ii, conic])
                good = len(i_) == 0 and len(ii) == q * q + q and len(on) == (q + 1) ** 2 \
                    and len(_singular_points(bb, rows)) == 0
                if not good:
                    bad4.append(int(lid))
    rep.add(f"{tag} / Type-II lines via S_I-planes: q^2 II-points, an affine plane", [], bad2)
    rep.add(f"{tag} / Type-II lines via S_II-planes: cone with one I-point vertex", [], bad3)
    rep.add(f"{tag} / Type-III lines via S_II-planes: q^2+q II-points, hyperbolic", [], bad4)
    rep.check(f"{tag} / every clause has witnesses", c2 > 0 and c3 > 0 and c4 > 0)
    return rep


def verify_fixed_structure(q: int) -> Report:
    bb = bruck_bose(q)
    P = bb.params
    n, g = P.n, P.g
    rep = Report()
    tag = f"fixed structure in PG(6,q) / q={q}"
    rep.add(f"{tag} / fixed points", q * q + g * q + g, len(bb.fixed_points))
    rows, ptwise = bb.fixed_lines
    aff = bb.affine
    in_inf = ~aff[rows].any(axis=1)
    inf_type = np.where(in_inf[:, None], bb.point_type[rows], 0)
    n_fixed = np.isin(rows, bb.fixed_points).sum(axis=1)
    fixed_i = in_inf & ~ptwise & (inf_type == PointType2.I).all(axis=1)
    fixed_ii = in_inf & ~ptwise & (inf_type == PointType2.II).any(axis=1)
    rep.add(f"{tag} / Sigma_inf: ptwise-fixed, fixed-I, fixed-II lines",
            [g, g * (q + 1), g * (q**3 - q) // (q - n)],
            [int((in_inf & ptwise).sum()), int(fixed_i.sum()), int(fixed_ii.sum())])
    affine_ptwise = ptwise & ~in_inf
    pi_fix = bb.space.points_of(bb.pi_fix)
    rep.check(f"{tag} / affine ptwise-fixed lines lie in pi_fix",
              bool(np.isin(rows[affine_ptwise], pi_fix).all()))
    affine_ii = ~ptwise & ~in_inf
    rep.add(f"{tag} / affine fixed-II lines exist", n != -1, bool(affine_ii.any()))

    # the pencil construction through a fixed-I line meeting pi_fix
    S = bb.space
    expected = set()
    for m in rows[fixed_i]:
        R = np.intersect1d(m, pi_fix)
        if len(R) != 1:
            continue
        R = int(R[0])
        for l in rows[ptwise]:
            if R not in l or not aff[l].any() or not np.isin(l, pi_fix).all():
                continue
            pl = S.subspace(S.vectors[[int(m[0]), int(m[1]), *[int(x) for x in l[:2]]]])
            for x in S.points_of(pl):
                if x in m or x in l:
                    continue
                expected.add(tuple(_span_ids(bb, np.array([R, x]))))
    actual = {tuple(r) for r in rows[affine_ii]}
    rep.add(f"{tag} / pencil construction lines are fixed", len(expected),
            sum(np.array_equal(np.sort(bb.phi_image[list(l)]), l) for l in expected))
    rep.add(f"{tag} / affine fixed-II lines = pencil construction", sorted(expected), sorted(actual))
    # with g = 3 the fixed points of Sigma_inf off pi_fix give further fixed lines
    off = np.setdiff1d(bb.fixed_points, pi_fix)
    joins = {tuple(_span_ids(bb, np.array([a, b]))) for a in off for b in pi_fix[aff[pi_fix]]}
    fixed_pencil = {l for l in expected if np.array_equal(np.sort(bb.phi_image[list(l)]), l)}
    rep.add(f"{tag} / affine fixed-II lines = fixed pencil lines and joins to fixed points off pi_fix",
            sorted(fixed_pencil | joins), sorted(actual))
    return rep


def verify_slice(ctx: ReductionContext) -> Report:
    """Cut the PG(8, q) model with the 6-space spanned by the 5-space of z = 0
    and the point Theta(0, 0, 1); compare with the coordinate model."""
    q = ctx.q
    space = ctx.pg8
    T = ctx.spec.top
    e = np.eye(9, dtype=np.int64)
    pi6 = space.subspace(e[[0, 1, 2, 3, 4, 5, 6]])
    pi6_pts = space.points_of(pi6)
    ok = True
    count = 0
    for x in range(T.order):
        for y in range(T.order):
            pid = ctx.pg2.point_id(np.array([x, y, 1]))
            hit = np.intersect1d(ctx.splane_points[pid], pi6_pts)
            want = space.point_id(np.concatenate([T.digits[x], T.digits[y], [1, 0, 0]]))
            ok &= len(hit) == 1 and int(hit[0]) == want
            count += 1
    rep = Report()
    rep.add(f"slice / q={q} / affine spread planes meeting the 6-space", T.order**2, count)
    rep.check(f"slice / q={q} / each meets it in (theta(x), theta(y), 1)", ok)
    return rep
