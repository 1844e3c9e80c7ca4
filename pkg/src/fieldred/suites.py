"""Verification suites: each returns a ``Report`` of exact claims for one q."""

from __future__ import annotations

import numpy as np

from . import bruckbose, figueroa, fixed, linsets
from .fixed import ClassificationError, CongruenceKind, analyze
from .reduction import PointType2, ReductionContext, context
from .report import Report

__all__ = ["SUITES", "run_suite", "census_report", "SuiteRejected", "expected_congruence"]


class SuiteRejected(ValueError):
    """The suite's hypothesis excludes this q."""


def census_report(ctx: ReductionContext, seed: int = 0) -> Report:
    c = fixed.census(ctx, seed=seed)
    rep = Report()
    for cell in c.cells:
        anchor = f"{cell.table} / q={ctx.q} / {cell.row}"
        if cell.column:
            anchor += f" / {cell.column}"
        rep.add(anchor, cell.expected, cell.computed)
    return rep


def _tables(ctx: ReductionContext, sample: int, seed: int) -> Report:
    rep = census_report(ctx, seed)
    for r in (fixed.verify_hwise(ctx),
              fixed.verify_intersections_with_hspaces(ctx, limit=sample, seed=seed),
              fixed.verify_segre_structure(ctx, samples=min(sample, 5), seed=seed),
              fixed.verify_pifix_line_structure(ctx, samples=sample, seed=seed)):
        rep.extend(_tagged(r, ctx.q))
    return rep


def _tagged(rep: Report, q: int) -> Report:
    out = Report()
    for c in rep:
        anchor = c.anchor if f"q={q}" in c.anchor else f"q={q} / {c.anchor}"
        out.add(anchor, c.expected, c.computed)
    return out


def expected_congruence(q: int) -> CongruenceKind:
    n = {0: 0, 1: 1, 2: -1}[q % 3]
    return {0: CongruenceKind.PARABOLIC, 1: CongruenceKind.HYPERBOLIC,
            -1: CongruenceKind.ELLIPTIC}[n]


def _congruence(ctx: ReductionContext, sample: int, seed: int) -> Report:
    rep = Report()
    want = expected_congruence(ctx.q).name.lower()
    pairs = fixed.sigma3_spaces(ctx, limit=sample, seed=seed)
    for i, lid in pairs:
        try:
            got = fixed.congruence_classify(ctx, i, lid, samples=20, seed=seed).kind.name.lower()
        except ClassificationError as exc:
            got = f"unclassified: {exc}"
        rep.add(f"congruence / q={ctx.q} / hwise {i}, H_I over line {lid}", want, got)
    rep.extend(_tagged(fixed.verify_fixed_i_reguli(ctx, pairs[0][1]), ctx.q))
    return rep


def _linear_sets(ctx: ReductionContext, sample: int, seed: int) -> Report:
    q = ctx.q
    rep = Report()
    expected = linsets.linear_set_expected(ctx.params)
    limit = None if q == 3 else sample
    groups = linsets.fixed_subspace_samples(ctx, limit=limit, seed=seed)
    weights_ok = True
    for name, rows in groups.items():
        if not rows:
            continue
        good = 0
        for r in rows:
            ls = linsets.linear_set_from_points(ctx, r)
            weights_ok &= int(((q ** ls.weights - 1) // (q - 1)).sum()) == len(r)
            good += linsets.matches(expected[name], linsets.classify_linear_set(ctx, ls))
        rep.add(f"linear sets / q={q} / {name} / matching", len(rows), good)
    rep.check(f"linear sets / q={q} / weights account for every point", weights_ok)

    fs = analyze(ctx)
    g = ctx.params.g
    counts = []
    for name in ("ptwise-fixed plane", "fixed-III plane", "h2 plane"):
        for r in groups[name][:3]:
            counts.append(linsets.fixed_ruling_planes(ctx, fs.plane_subspace(r)))
    rep.add(f"linear sets / q={q} / sigma-fixed ruling planes per phi-fixed subplane",
            [g], sorted(set(counts)))
    return rep


def _figueroa(ctx: ReductionContext, sample: int, seed: int) -> Report:
    return figueroa.verify_figueroa(ctx)


def _scroll(ctx: ReductionContext, sample: int, seed: int) -> Report:
    if ctx.q % 3 == 1:
        raise SuiteRejected(f"scroll: q={ctx.q} violates the hypothesis q not congruent to 1 mod 3")
    rng = np.random.default_rng(seed)
    pts = np.flatnonzero(ctx.pg2_type == PointType2.III)
    chosen = np.sort(rng.choice(pts, size=min(sample, len(pts)), replace=False))
    rep = Report()
    for i, G in enumerate(chosen):
        rep.extend(figueroa.verify_scroll(ctx, int(G), all_P=(ctx.q == 3 and i == 0)))
    return rep


def _quadric(ctx: ReductionContext, sample: int, seed: int) -> Report:
    q = ctx.q
    rep = Report()
    rep.extend(bruckbose.verify_quadric(q))
    rep.extend(bruckbose.verify_quadric_sections(q))
    rep.extend(bruckbose.verify_fixed_structure(q))
    if q == 3:
        rep.extend(bruckbose.verify_slice(ctx))
    return rep


SUITES = {
    "tables": _tables,
    "congruence": _congruence,
    "linear-sets": _linear_sets,
    "figueroa": _figueroa,
    "scroll": _scroll,
    "quadric": _quadric,
}


def run_suite(name: str, q: int, sample: int = 30, seed: int = 0) -> Report:
    """Run one suite (or ``all``).  ``all`` records a rejected scroll suite as
    a passing claim instead of raising."""
    ctx = context(q)
    if name != "all":
        return SUITES[name](ctx, sample, seed)
    rep = Report()
    for key, fn in SUITES.items():
        try:
            rep.extend(fn(ctx, sample, seed))
        except SuiteRejected:
            rep.add(f"{key} / q={q} / hypothesis excludes q", "rejected", "rejected")
    return rep
