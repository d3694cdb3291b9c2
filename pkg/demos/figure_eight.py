"""The figure-eight knot T_2 as a cone-manifold.

Run with ``python3 demos/figure_eight.py``.

The figure-eight complement has volume 2.029883..., twice the Clausen value
Cl_2(pi/3).  Closing the cusp with a cone angle alpha shrinks the volume
until alpha reaches 2pi/3, where the structure turns Euclidean.  Here we
follow that curve and compare with the classical one-dimensional integral
int_alpha^{2pi/3} arccosh(1 + cos t - cos 2t) dt.
"""

import math

import mpmath

from conevol import cone_volume, cover_volume, critical_angles

(alpha0,) = critical_angles(1).alphas
print(f"critical angle alpha0 = {alpha0:.12f}   (2pi/3 = {2 * math.pi / 3:.12f})")


def closed_form(alpha):
    f = lambda t: mpmath.acosh(1 + mpmath.cos(t) - mpmath.cos(2 * t))
    return float(mpmath.quad(f, [alpha, 2 * mpmath.pi / 3]))


print("\n alpha      Schlaefli     closed form    difference")
for alpha in (0.0, 0.5, 1.0, math.pi / 2, 1.8, 2.0):
    v = cone_volume(1, alpha).geometric_volume
    c = closed_form(alpha)
    print(f"{alpha:6.4f}  {v:.12f}  {c:.12f}  {v - c:+.1e}")

# The k-fold cyclic branched cover is hyperbolic once 2pi/k < alpha0, that
# is for k >= 4; k = 3 lands exactly on the critical angle.
print("\n k   structure    cone        cover")
for k in range(3, 9):
    r = cover_volume(1, k)
    if r.structure != "hyperbolic":
        print(f"{k:2d}   {r.structure}")
    else:
        print(f"{k:2d}   hyperbolic   {r.cone_volume:.6f}   {r.cover_volume:.6f}")
