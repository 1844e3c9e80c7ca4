"""Walk through the six point classes of PG(8, q) under sigma.

    python demos/point_classes.py 4
"""

import sys

import numpy as np

from fieldred import context
from fieldred.fixed import analyze, count_expected
from fieldred.reduction import PointType8

q = int(sys.argv[1]) if len(sys.argv) > 1 else 3
ctx = context(q)
print(f"q={q}: n={ctx.params.n}, g={ctx.params.g}")
print(f"PG(2,{q**3}) has {ctx.pg2.size} points; PG(8,{q}) has {ctx.pg8.size}")

# each PG(2, q^3) point becomes a spread plane of q^2+q+1 points
print("spread plane sizes:", np.unique(np.bincount(ctx.point_to_splane)))

exp = count_expected(ctx.params)
names = ["fixed point", "I: point", "I.. point", "II: point", "II.. point", "III.. point"]
counts = np.bincount(ctx.pg8_type, minlength=6)
for t, name in zip(PointType8, names):
    print(f"  {name:<12} {counts[t]:>8}  closed form {exp[name]}")

fs = analyze(ctx)
print(f"{len(fs.ptwise_planes)} ptwise-fixed plane(s), {len(fs.hwise_spaces)} hwise-fixed 5-space(s)")
