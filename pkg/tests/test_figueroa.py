
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fieldred import figueroa
from fieldred.figueroa import (
    AxiomViolation,
    DegenerateConic,
    IncidencePlane,
    build_figueroa,
    conic_through,
    e_set,
    f_set,
    fig_block,
    scroll_representation,
    verify_scroll,
)
from fieldred.gf import field_tower
from fieldred.linalg import matmul, rank
from fieldred.pg import projective_space
from fieldred.reduction import PointType2, context

FIELDS = {3: field_tower(3, 1).mid, 4: field_tower(2, 2).mid, 5: field_tower(5, 1).mid}


def _conic_oracle(F, P1, P2, P3, t2, t3):
    """Every non-degenerate conic through P1, P2, P3 whose only point on t2
    (t3) is P2 (P3), found by trying all coefficient vectors."""
    space = projective_space(F, 2)
    V = space.vectors
    m = F.mul
    mono = np.stack([m[V[:, 0], V[:, 0]], m[V[:, 1], V[:, 1]], m[V[:, 2], V[:, 2]],
                     m[V[:, 0], V[:, 1]], m[V[:, 0], V[:, 2]], m[V[:, 1], V[:, 2]]], axis=1)
    coeffs = projective_space(F, 5).vectors
    on = matmul(F, coeffs, mono.T) == 0
    ids = [space.point_id(p) for p in (P1, P2, P3)]
    on_t2 = matmul(F, V, np.asarray(t2)[:, None])[:, 0] == 0
    on_t3 = matmul(F, V, np.asarray(t3)[:, None])[:, 0] == 0
    found = []
    for row in np.flatnonzero(on[:, ids].all(axis=1)):
        pts = np.flatnonzero(on[row])
        if len(pts) != F.order + 1 or rank(F, V[pts]) < 3:
            continue
        if set(np.flatnonzero(on[row] & on_t2)) != {ids[1]}:
            continue
        if set(np.flatnonzero(on[row] & on_t3)) != {ids[2]}:
            continue
        found.append(tuple(pts))
    return found


def test_conic_standard_triangle_gf3():
    F = FIELDS[3]
    P1, P2, P3 = (1, 1, 1), (0, 1, 0), (0, 0, 1)
    t2, t3 = (0, 0, 1), (0, 1, 0)  # z = 0 and y = 0
    c, ids = conic_through(F, P1, P2, P3, t2, t3)
    assert _conic_oracle(F, P1, P2, P3, t2, t3) == [tuple(ids)]
    # x^2 = yz up to scalar
    assert c[0] != 0 and c[5] == F.neg[c[0]] and not c[1:5].any()


@pytest.mark.parametrize("q", [3, 4, 5])
@given(data=st.data())
def test_conic_matches_oracle(q, data):
    F = FIELDS[q]
    space = projective_space(F, 2)
    ids = data.draw(st.lists(st.integers(0, space.size - 1), min_size=3, max_size=3, unique=True))
    P1, P2, P3 = (space.vectors[i] for i in ids)
    lines2 = [l for l in space.vectors if matmul(F, P2[None], l[:, None])[0, 0] == 0]
    lines3 = [l for l in space.vectors if matmul(F, P3[None], l[:, None])[0, 0] == 0]
    t2 = lines2[data.draw(st.integers(0, q))]
    t3 = lines3[data.draw(st.integers(0, q))]
    want = _conic_oracle(F, P1, P2, P3, t2, t3)
    if len(want) == 1:
        _, got = conic_through(F, P1, P2, P3, t2, t3)
        assert tuple(got) == want[0]
    else:
        assert want == []
        with pytest.raises(DegenerateConic):
            conic_through(F, P1, P2, P3, t2, t3)


def test_conic_collinear_points_degenerate():
    F = FIELDS[3]
    with pytest.raises(DegenerateConic):
        conic_through(F, (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (0, 0, 1))


def test_conic_rejects_tangent_off_point():
    with pytest.raises(ValueError):
        conic_through(FIELDS[3], (1, 1, 1), (0, 1, 0), (0, 0, 1), (0, 1, 0), (0, 1, 0))


@pytest.mark.parametrize("q", [3, 4])
def test_pg2_is_a_projective_plane(q):
    space, lines = _pg2_lines(FIELDS[q])
    assert IncidencePlane(space.size, lines).check_axioms() == q


def _gram_oracle(num_points, lines):
    """Projective plane test through the dense incidence Gram matrices."""
    N = np.zeros((len(lines), num_points), dtype=np.int64)
    for i, l in enumerate(lines):
        N[i, l] = 1
    LL, PP = N @ N.T, N.T @ N
    np.fill_diagonal(LL, 1)
    np.fill_diagonal(PP, 1)
    return len(lines) == num_points and (LL == 1).all() and (PP == 1).all()


def _pg2_lines(F):
    space = projective_space(F, 2)
    return space, [space.points_of(space.subspace(space.annihilator([l]))) for l in space.vectors]


@pytest.mark.parametrize("q", [3, 4])
@given(data=st.data())
def test_axiom_check_matches_gram_oracle(q, data):
    space, lines = _pg2_lines(FIELDS[q])
    i = data.draw(st.integers(0, len(lines) - 1))
    j = data.draw(st.integers(0, q))
    new = data.draw(st.integers(0, space.size - 1))
    lines = [l.copy() for l in lines]
    lines[i][j] = new
    lines[i] = np.sort(lines[i])
    plane = IncidencePlane(space.size, lines)
    if _gram_oracle(space.size, lines):
        assert plane.check_axioms() == q
    else:
        with pytest.raises(AxiomViolation):
            plane.check_axioms()


def test_axiom_violation_has_witness():
    space, lines = _pg2_lines(FIELDS[3])
    lines[0] = lines[1].copy()
    with pytest.raises(AxiomViolation) as exc:
        IncidencePlane(space.size, lines).check_axioms()
    assert len(exc.value.witness) == 2


@pytest.mark.parametrize("q", [3, 4, 5])
@given(data=st.data())
def test_block_pieces(q, data):
    ctx = context(q)
    G3 = np.flatnonzero(ctx.pg2_type == PointType2.III)
    G = int(G3[data.draw(st.integers(0, len(G3) - 1))])
    e, f = e_set(ctx, G), f_set(ctx, G)
    assert len(e) == q * q + q + 1
    assert len(f) == q**3 - q * q - q
    assert len(np.intersect1d(e, f)) == 0
    phi = ctx.phi_image
    assert {int(phi[G]), int(phi[phi[G]])} <= set(f.tolist())
    assert G not in fig_block(ctx, G).points


def test_non_type3_point_rejected(ctx3):
    G = int(np.flatnonzero(ctx3.pg2_type == PointType2.I)[0])
    with pytest.raises(ValueError):
        e_set(ctx3, G)


def test_figueroa_q3_exhaustive(ctx3):
    plane = build_figueroa(ctx3)
    assert plane.num_points == len(plane.lines) == 757
    assert plane.check_axioms() == 27
    rep = figueroa.verify_figueroa(ctx3)
    assert rep.failures() == []


def test_scroll_q3(ctx3):
    G = int(np.flatnonzero(ctx3.pg2_type == PointType2.III)[0])
    rep = verify_scroll(ctx3, G, all_P=True)
    failed = [c.anchor for c in rep.failures()]
    # gamma has label (1:0:0): the pole of the two tangents, not on the conic
    assert failed == [f"scroll / q=3 / G={G} / gamma in D"]


def test_scroll_labels(ctx5):
    G = int(np.flatnonzero(ctx5.pg2_type == PointType2.III)[3])
    sc = scroll_representation(ctx5, G)
    F = ctx5.spec.mid
    labels = {tuple(int(x) for x in r) for r in sc.D_coords}
    assert len(labels) == 6
    assert {(0, 1, 0), (0, 0, 1), (1, 1, 1)} <= labels
    assert (1, 0, 0) not in labels
    for a, b, c in labels:
        assert F.mul[a, a] == F.mul[b, c]


def test_scroll_rejects_q4(ctx4):
    G = int(np.flatnonzero(ctx4.pg2_type == PointType2.III)[0])
    with pytest.raises(ValueError):
        scroll_representation(ctx4, G)


def test_scroll_rejects_foreign_base_point(ctx3):
    G = int(np.flatnonzero(ctx3.pg2_type == PointType2.III)[0])
    other = int(ctx3.splane_points[(G + 1) % ctx3.pg2.size][0])
    with pytest.raises(ValueError):
        scroll_representation(ctx3, G, P=other)
