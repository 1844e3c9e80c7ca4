import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fieldred import fixed
from fieldred.fixed import CongruenceKind, analyze, census, count_expected, verify_regulus
from fieldred.gf import field_tower, params_for
from fieldred.pg import projective_space
from fieldred.reduction import context
from fieldred.suites import expected_congruence

# Values printed in the subspace-count table, kept literal as golden data.
GOLDEN_POINTS = {
    3: [13, 39, 117, 312, 3744, 5616],
    4: [63, 189, 189, 3780, 22680, 60480],
    5: [31, 186, 744, 3720, 111600, 372000],
}
POINT_ROWS = ["fixed point", "I: point", "I.. point", "II: point", "II.. point", "III.. point"]


@pytest.mark.parametrize("q", [3, 4, 5])
def test_closed_form_point_counts_match_golden(q):
    exp = count_expected(params_for(q))
    assert [exp[r] for r in POINT_ROWS] == GOLDEN_POINTS[q]
    assert sum(GOLDEN_POINTS[q]) == (q**9 - 1) // (q - 1)


def test_closed_form_subspace_counts_q3():
    exp = count_expected(params_for(3))
    assert [exp[k] for k in ("ptwise-fixed line", "fixed-I line", "fixed-II line")] == [13, 13, 104]
    assert [exp[k] for k in ("ptwise-fixed plane", "S_I-plane", "fixed-II1 plane", "fixed-II2 plane",
                             "fixed-III plane", "h1 plane", "h2 plane")] \
        == [1, 13, 104, 312, 624, 52, 104]


@pytest.mark.parametrize("q", [3, 4])
def test_census_exhaustive(q):
    c = census(context(q))
    assert c.failures() == []


def test_hwise_spaces_q4_meet_in_ptwise_planes(ctx4):
    rep = fixed.verify_hwise(ctx4)
    assert rep.failures() == []
    fs = analyze(ctx4)
    ptw = {tuple(p) for p in fs.ptwise_plane_points}
    for i in range(3):
        for j in range(i + 1, 3):
            meet = np.intersect1d(fs.hwise_points[i], fs.hwise_points[j])
            assert tuple(meet) in ptw


@pytest.mark.parametrize("q", [3, 4, 5])
def test_structural_checks(q):
    ctx = context(q)
    for rep in (fixed.verify_intersections_with_hspaces(ctx, limit=5),
                fixed.verify_segre_structure(ctx, samples=2),
                fixed.verify_pifix_line_structure(ctx, samples=5)):
        assert rep.failures() == []


@pytest.mark.parametrize("q", [3, 4, 5])
def test_congruence_kind(q):
    ctx = context(q)
    want = expected_congruence(q)
    for i, lid in fixed.sigma3_spaces(ctx, limit=2):
        assert fixed.congruence_classify(ctx, i, lid, samples=5).kind == want
    assert [expected_congruence(x) for x in (3, 4, 5)] == [
        CongruenceKind.PARABOLIC, CongruenceKind.HYPERBOLIC, CongruenceKind.ELLIPTIC]


@pytest.mark.parametrize("p,k", [(3, 1), (2, 2)])
@given(data=st.data())
def test_regulus_through_three_skew_lines(p, k, data):
    F = field_tower(p, k).mid
    S = projective_space(F, 3)
    q = F.order
    seed = data.draw(st.integers(0, 2**16))
    rng = np.random.default_rng(seed)
    lines = []
    while len(lines) < 3:
        L = S.subspace(rng.integers(0, q, size=(2, 4)))
        if L.dim == 1 and all(S.meet(L, M) is None for M in lines):
            lines.append(L)
    trans = fixed.transversals(S, *lines)
    assert len(trans) == q + 1
    assert len({t for t in trans}) == q + 1
    for t in trans:
        assert t.dim == 1 and all(S.meet(t, L) is not None for L in lines)
    # the transversals are pairwise skew and their transversals recover the lines
    ok, back = verify_regulus(S, trans)
    assert ok
    assert set(lines) <= set(back)
