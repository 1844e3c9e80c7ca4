"""Build FIG(q^3) from PG(2, q^3) by swapping Type-III lines for Fig-blocks.

    python demos/figueroa_plane.py 3
"""

import sys

import numpy as np

from fieldred import context
from fieldred.figueroa import block_generators, build_figueroa, fig_block
from fieldred.reduction import PointType2

q = int(sys.argv[1]) if len(sys.argv) > 1 else 3
ctx = context(q)
m = int(np.flatnonzero(ctx.line_type == PointType2.III)[0])
G = int(block_generators(ctx)[m])
b = fig_block(ctx, G)
print(f"line {m} is replaced by the block of G={G}: |E_G|={len(b.e)}, |F_G|={len(b.f)}")
print("points shared with the old line:", len(np.intersect1d(b.points, ctx.line_points[m])))

plane = build_figueroa(ctx)
print(f"FIG({q**3}): {plane.num_points} points, {len(plane.lines)} lines")
print("projective plane of order", plane.check_axioms())
