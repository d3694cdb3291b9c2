"""Competing branches for the twist knot T_8.

Run with ``python3 demos/several_branches.py``.

For T_8 the discriminant of P_8(V, cos(alpha/2)) has two zeros in the
range of interest, so two conjugate root pairs are born as alpha decreases.
Each carries a candidate volume; the geometric structure is the one with
the largest volume.  The script prints both branches at a few angles: Im V
stays negative and |L| stays above one, as it must on a hyperbolic branch.
"""

import numpy as np

from conevol import cone_volume, critical_angles, trace_branch

n = 4
ca = critical_angles(n)
print(f"T_{2 * n}: {ca.count} critical angles", ", ".join(f"{a:.6f}" for a in ca.alphas))

res = cone_volume(n, 0.0)
for a0, vol in res.branch_volumes:
    tag = "geometric" if a0 == res.alpha0_used else ""
    print(f"  branch from {a0:.6f}: volume at alpha = 0 is {vol:.6f} {tag}")

for a0 in ca.alphas:
    b = trace_branch(n, a0, grid=2000)
    print(f"\nbranch seeded at alpha0 = {a0:.6f}")
    print("   alpha        V                      |L|")
    for target in np.linspace(a0, 0.0, 6)[:-1]:
        j = int(np.argmin(np.abs(b.alpha - target)))
        V, L = b.V[j], b.L[j]
        print(f"  {b.alpha[j]:7.4f}  {V.real:+.6f} {V.imag:+.6f}i   {abs(L):.6f}")
    print(f"  largest Im V on the branch: {b.max_imag_V():.1e}")

# The volume falls monotonically as the cone angle opens up.
print("\n alpha   geometric volume")
for alpha in np.linspace(0.0, 2.8, 8):
    print(f" {alpha:5.2f}   {cone_volume(n, alpha, grid=4000).geometric_volume:.6f}")
