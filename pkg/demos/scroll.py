"""The planes beta and D carrying one Fig-block inside PG(8, q).

    python demos/scroll.py 5
"""

import sys

import numpy as np

from fieldred import context
from fieldred.figueroa import fig_block, scroll_representation, verify_scroll
from fieldred.reduction import PointType2

q = int(sys.argv[1]) if len(sys.argv) > 1 else 3
ctx = context(q)
G = int(np.flatnonzero(ctx.pg2_type == PointType2.III)[0])
sc = scroll_representation(ctx, G)
print(f"G={G}: conic in pi has {len(sc.conic)} points; D has {len(sc.D)} planes")
print("D labels (a:b:c) on a^2 = bc:", [tuple(int(x) for x in r) for r in sc.D_coords])
print("B(beta) = E_G:", np.array_equal(ctx.back_map_B(ctx.pg8.points_of(sc.beta)), fig_block(ctx, G).e))
for c in verify_scroll(ctx, G):
    print("PASS" if c.passed else "FAIL", c.anchor)
