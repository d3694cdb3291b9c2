"""Two descriptions of the same representations.

Run with ``python3 demos/apoly_crosscheck.py``.

The distance polynomial P_2n(V, B) and the A-polynomial A_2n(L, M) both cut
out the (non-abelian) SL(2, C) characters of the twist knot group.  With
M = exp(i alpha/2), A = cot(alpha/2) and L = M^-2 (A + iV)/(A - iV), the
roots V of one polynomial map onto the roots L of the other.  We build the
figure-eight A-polynomial from scratch and match root sets.
"""

import math

import numpy as np

from conevol import build_apoly
from conevol.apoly import bijection_residual, holonomy_from_V
from conevol.branch_solver import roots_at_alpha

ap = build_apoly(1)
print("A-polynomial of T_2, terms [deg L, deg M, coefficient]:")
print(" ", ap.term_list())

alpha = 2 * math.pi / 5
M = np.exp(0.5j * alpha)
L_roots = np.sort_complex(ap.roots_L(M))
images = np.sort_complex(holonomy_from_V(roots_at_alpha(1, alpha), alpha))
print("\nalpha = 2pi/5:")
print("  roots L of A(L, M)      ", np.round(L_roots, 10))
print("  images of roots V of P_2", np.round(images, 10))

print("\nworst root mismatch for |n| <= 4 at three angles:")
for n in (-4, -3, -2, -1, 1, 2, 3, 4):
    worst = max(bijection_residual(n, a) for a in (2 * math.pi / 5, 2 * math.pi / 7, 1.0))
    print(f"  n = {n:+d}: deg_L = {build_apoly(n).deg_L}, mismatch {worst:.1e}")
