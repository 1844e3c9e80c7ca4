"""The affine Type-I and Type-II points of PG(2, q^3) as a quadric in PG(6, q).

    python demos/quadric.py 3
"""

import sys

import numpy as np

from fieldred.bruckbose import beta_constant, bruck_bose, verify_quadric
from fieldred.reduction import PointType2

q = int(sys.argv[1]) if len(sys.argv) > 1 else 3
bb = bruck_bose(q)
print(f"beta = f(tau, tau^2) = {beta_constant(bb.spec)}")
aff = bb.affine
print("affine points on the quadric:", int((aff & bb.on_quadric).sum()))
print("affine Type I or II points:  ", int((aff & (bb.point_type != PointType2.III)).sum()))
for c in verify_quadric(q):
    print("PASS" if c.passed else "FAIL", c.anchor)
