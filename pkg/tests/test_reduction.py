import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fieldred.linalg import matmul, rank
from fieldred.reduction import PointType2, PointType8, build_context, context

QS = [3, 4, 5]


def _det3(F, a, b, c):
    """Cofactor expansion with scalar table lookups."""
    m, s, ad = F.mul, F.sub, F.add
    t0 = m[a[0], s[m[b[1], c[2]], m[b[2], c[1]]]]
    t1 = m[a[1], s[m[b[0], c[2]], m[b[2], c[0]]]]
    t2 = m[a[2], s[m[b[0], c[1]], m[b[1], c[0]]]]
    return int(ad[s[t0, t1], t2])


def _phi(ctx, v):
    top = ctx.spec.top
    x, y, z = (int(top.frob[c]) for c in v)
    return (z, x, y)


@pytest.mark.parametrize("q", QS)
@given(data=st.data())
def test_pg2_type_matches_determinant_oracle(q, data):
    ctx = context(q)
    pid = data.draw(st.integers(0, ctx.pg2.size - 1))
    F = ctx.spec.top
    v = tuple(int(c) for c in ctx.pg2.vectors[pid])
    v1 = _phi(ctx, v)
    v2 = _phi(ctx, v1)
    if ctx.pg2.point_id(v1) == pid:
        want = PointType2.I
    elif _det3(F, v, v1, v2) == 0:
        want = PointType2.II
    else:
        want = PointType2.III
    assert ctx.classify_pg2_point(pid) == want


@pytest.mark.parametrize("q", QS)
def test_phi_has_order_three(q):
    ctx = context(q)
    phi = ctx.phi_image
    assert (phi[phi[phi]] == np.arange(ctx.pg2.size)).all()


@pytest.mark.parametrize("q", QS)
def test_pg2_type_counts(q):
    ctx = context(q)
    v = q * q + q + 1
    t = np.bincount(ctx.pg2_type, minlength=4)
    assert t[1] == v
    assert t[2] == v * (q**3 - q)
    assert t[3] == ctx.pg2.size - v - v * (q**3 - q)


@pytest.mark.parametrize("q", QS)
def test_line_types_are_dual_counts(q):
    ctx = context(q)
    assert (np.bincount(ctx.line_type, minlength=4) == np.bincount(ctx.pg2_type, minlength=4)).all()


@pytest.mark.parametrize("q", QS)
def test_spread_partition(q):
    ctx = context(q)
    counts = np.bincount(ctx.point_to_splane, minlength=ctx.pg2.size)
    assert (counts == ctx.params.v).all()
    allpts = np.sort(ctx.splane_points.ravel())
    assert (allpts == np.arange(ctx.pg8.size)).all()


@pytest.mark.parametrize("q", QS)
@given(data=st.data())
def test_spread_plane_subspace_matches_ids(q, data):
    ctx = context(q)
    pid = data.draw(st.integers(0, ctx.pg2.size - 1))
    S = ctx.spread_plane(pid)
    assert S.dim == 2
    assert (ctx.pg8.points_of(S) == np.sort(ctx.splane_points[pid])).all()


@pytest.mark.parametrize("q", QS)
def test_sigma_cubed_is_identity(q):
    ctx = context(q)
    F = ctx.spec.mid
    M = ctx.sigma.matrix
    M3 = matmul(F, matmul(F, M, M), M)
    # M^3 is a scalar matrix, so sigma^3 is the identity projectivity
    assert (M3 == M3[0, 0] * np.eye(9, dtype=np.int64)).all() and M3[0, 0] != 0
    assert (ctx.sigma_power(3) == np.arange(ctx.pg8.size)).all()


@pytest.mark.parametrize("q", QS)
def test_orbit_sizes_are_one_or_three(q):
    ctx = context(q)
    s1 = ctx.sigma_image
    s2 = s1[s1]
    fixed = s1 == np.arange(len(s1))
    assert ((s2 == np.arange(len(s1))) <= fixed).all()
    assert (fixed == (ctx.pg8_type == PointType8.FIXED)).all()


@pytest.mark.parametrize("q", QS)
def test_sigma_maps_spread_to_spread_by_phi(q):
    ctx = context(q)
    img = ctx.point_to_splane[ctx.sigma_image]
    assert (img == ctx.phi_image[ctx.point_to_splane]).all()


@pytest.mark.parametrize("q", [3, 4])
@given(data=st.data())
def test_pg8_type_matches_orbit_rank_oracle(q, data):
    ctx = context(q)
    F = ctx.spec.mid
    pid = data.draw(st.integers(0, ctx.pg8.size - 1))
    v = ctx.pg8.vectors[[pid]]
    w1 = matmul(F, v, ctx.sigma.matrix)
    w2 = matmul(F, w1, ctx.sigma.matrix)
    r = rank(F, np.vstack([v, w1, w2]))
    st_ = ctx.pg2_type[ctx.point_to_splane[pid]]
    if r == 1:
        want = PointType8.FIXED
    else:
        want = {(1, 2): 1, (1, 3): 2, (2, 2): 3, (2, 3): 4, (3, 3): 5}[(int(st_), r)]
    assert ctx.classify_pg8_point(pid) == want


@pytest.mark.parametrize("q", QS)
def test_ruling_system_partitions_subplane_spread(q):
    ctx = context(q)
    planes = ctx.subplane_ruling_planes
    assert len(planes) == ctx.params.v
    pts = np.concatenate([ctx.pg8.points_of(S) for S in planes])
    assert len(np.unique(pts)) == len(pts)
    fixed_spl = np.flatnonzero(ctx.pg2_type == PointType2.I)
    assert set(ctx.back_map_B(pts)) == set(fixed_spl)


def test_conjugate_phi_gives_same_counts():
    a, b = context(3), build_context(3, phi_power=2)
    assert (np.bincount(a.pg2_type) == np.bincount(b.pg2_type)).all()
    assert (np.bincount(a.pg8_type) == np.bincount(b.pg8_type)).all()


def test_big_theta_rejects_zero(ctx3):
    with pytest.raises(ValueError):
        ctx3.big_theta(0, 0, 0)
