"""Volumes of hyperbolic twist-knot cone-manifolds.

The twist knot T_2n(alpha) with cone angle alpha is hyperbolic for
alpha below a critical angle alpha_0.  Its volume comes from integrating
log|L| along a root branch of the complex distance polynomial P_2n(V, B),
L being the longitude holonomy.
"""

from .distance_poly import (DomainError, KnotIndex, build_distance_poly, normalize_knot,
                            reduced_distance_poly)
from .branch_solver import Branch, CriticalAngles, critical_angles, trace_branch
from .schlaefli_volume import (CoverResult, VolumeResult, cone_volume, cover_volume,
                               geometric_volume, make_table1, make_table2)
from .apoly import APolynomial, build_apoly

__all__ = [
    "APolynomial", "Branch", "CoverResult", "CriticalAngles", "DomainError", "KnotIndex",
    "VolumeResult", "build_apoly", "build_distance_poly", "cone_volume", "cover_volume",
    "critical_angles", "geometric_volume", "make_table1", "make_table2", "normalize_knot",
    "reduced_distance_poly", "trace_branch",
]
