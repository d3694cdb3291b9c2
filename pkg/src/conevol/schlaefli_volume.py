"""Cone-manifold volumes from the Schlaefli formula.

Along a branch, d Vol / d alpha = -log|L|, and the volume vanishes at the
critical angle alpha_0 where the cone-manifold degenerates.  Hence

    Vol(T_2n(alpha)) = int_alpha^alpha_0 log|L(a)| da,

the integrand being zero beyond alpha_0 where every root is real.  Each
critical angle seeds one candidate branch; the geometric volume is the
largest candidate.  The k-fold cyclic cover has k times the volume of the
cone-manifold with angle 2 pi / k.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from scipy.integrate import simpson

from . import _dense
from .branch_solver import critical_angles, discriminant_in_B, trace_branch
from .distance_poly import DomainError, KnotIndex, as_knot, normalize_knot

DEFAULT_GRID = 10_000
# below alpha0 the volume grows like (alpha0 - alpha)^(3/2); within this
# distance it is under 1e-14 and the branch is not traced at all
ALPHA0_GUARD = 1e-10


def integrate_branch(branch) -> float:
    """Composite Simpson rule of log|L| over the branch's parameter grid."""
    grid = branch.alpha.size - 1
    return float(simpson(branch.integrand * branch.weights, dx=1.0 / grid))


@dataclass
class VolumeResult:
    knot: KnotIndex
    alpha: float
    alpha0_used: float
    branch_volumes: list  # [(seed alpha0, volume)], largest alpha0 first
    geometric_volume: float
    grid: int
    hyperbolic: bool = True
    quadrature: dict = field(default_factory=dict)

    @property
    def alpha0(self):
        return [a for a, _ in self.branch_volumes]

    def to_dict(self):
        return {
            "knot": self.knot.two_n,
            "alpha": self.alpha,
            "alpha0": self.alpha0,
            "branches": [{"seed": a, "volume": v} for a, v in self.branch_volumes],
            "geometric_volume": self.geometric_volume,
            "grid": self.grid,
            "hyperbolic": self.hyperbolic,
            "quadrature": self.quadrature,
        }


def cone_volume(knot, alpha=0.0, grid=DEFAULT_GRID, spacing="graded", tol=1e-12) -> VolumeResult:
    """Volume of T_2n(alpha) on every seeded branch; geometric = maximum."""
    knot = as_knot(knot).require_hyperbolic()
    if grid % 2 or grid < 2:
        raise ValueError("grid must be a positive even integer")
    if not 0.0 <= alpha <= math.pi:
        raise DomainError("alpha must lie in [0, pi]")
    ca = critical_angles(knot)
    vols = []
    for z in ca.zeros:
        if alpha >= z.alpha0 - ALPHA0_GUARD:
            vols.append((z.alpha0, 0.0))
            continue
        b = trace_branch(knot, z.alpha0, grid, alpha_lo=alpha, spacing=spacing, tol=tol)
        vols.append((z.alpha0, max(integrate_branch(b), 0.0)))
    geo_alpha0, geo = max(vols, key=lambda t: t[1])
    quad = {"rule": "composite Simpson", "spacing": spacing,
            "interval": "[alpha, alpha0]", "tail_beyond_alpha0": 0.0}
    return VolumeResult(knot, float(alpha), geo_alpha0, vols, geo, grid,
                        hyperbolic=alpha < ca.geometric_max - ALPHA0_GUARD, quadrature=quad)


def geometric_volume(knot, alpha=0.0, grid=DEFAULT_GRID, spacing="graded") -> float:
    return cone_volume(knot, alpha, grid, spacing).geometric_volume


@dataclass
class CoverResult:
    knot: KnotIndex
    k: int
    cone_volume: float | None
    cover_volume: float | None
    structure: str = "hyperbolic"  # or "Euclidean", "spherical"

    def to_dict(self):
        return {"knot": self.knot.two_n, "k": self.k, "structure": self.structure,
                "cone_volume": self.cone_volume, "cover_volume": self.cover_volume}


def classify_angle(knot, k: int) -> str:
    """Compare 2 pi/k with the largest critical angle.

    For k = 3 (and k = 2) cos(pi/k) is rational and the comparison with the
    discriminant zero is exact; otherwise a tie is declared within 1e-12.
    """
    knot = as_knot(knot).require_hyperbolic()
    ca = critical_angles(knot)
    top = ca.zeros[0]
    alpha = 2 * math.pi / k
    B_exact = {2: Fraction(0), 3: Fraction(1, 2)}.get(k)
    if B_exact is not None:
        DB = discriminant_in_B(knot.n).integer_primitive()
        if (top.B_interval.lo < B_exact <= top.B_interval.hi
                and _dense.sign_at_rational(DB, B_exact.numerator, B_exact.denominator) == 0):
            return "Euclidean"
    elif abs(alpha - top.alpha0) < 1e-12:
        return "Euclidean"
    return "hyperbolic" if alpha < top.alpha0 else "spherical"


def cover_volume(knot, k: int, grid=DEFAULT_GRID, spacing="graded", tol=1e-12) -> CoverResult:
    knot = as_knot(knot).require_hyperbolic()
    if k < 3:
        raise DomainError("k must be at least 3")
    kind = classify_angle(knot, k)
    if kind != "hyperbolic":
        return CoverResult(knot, k, None, None, kind)
    cone = cone_volume(knot, 2 * math.pi / k, grid, spacing, tol).geometric_volume
    return CoverResult(knot, k, cone, k * cone)


@dataclass
class Table1Row:
    two_n: int
    N: int | None
    Z: list
    volumes: list
    geometric: float | None
    note: str = ""


def make_table1(range_n, grid=DEFAULT_GRID, spacing="graded", tol=1e-12):
    """Rows (2n, N, critical angles, branch volumes, geometric volume).

    n = -1 (the torus knot T_-2) gets a placeholder row; n = 0 is refused.
    """
    rows = []
    for n in range_n:
        knot = as_knot(n)
        if knot.n == -1:
            rows.append(Table1Row(-2, None, [], [], None, "torus knot"))
            continue
        res = cone_volume(knot, 0.0, grid, spacing, tol)
        rows.append(Table1Row(knot.two_n, len(res.branch_volumes), res.alpha0,
                              [v for _, v in res.branch_volumes], res.geometric_volume))
    return rows


def make_table2(range_n, k_range=range(3, 11), grid=DEFAULT_GRID, spacing="graded", tol=1e-12):
    return [cover_volume(n, k, grid, spacing, tol) for n in range_n for k in k_range]


def table1_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["2n", "N", "seed", "alpha0", "volume", "geometric_volume", "note"])
    for r in rows:
        if not r.Z:
            w.writerow([r.two_n, "" if r.N is None else r.N, "", "", "", "", r.note])
        for i, (z, v) in enumerate(zip(r.Z, r.volumes)):
            w.writerow([r.two_n, r.N, i, f"{z:.6f}", f"{v:.6f}",
                        f"{r.geometric:.6f}" if i == 0 else "", r.note])
    return buf.getvalue()


def table2_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["2n", "k", "structure", "cone_volume", "cover_volume"])
    for r in rows:
        fmt = (lambda x: "" if x is None else f"{x:.6f}")
        w.writerow([r.knot.two_n, r.k, r.structure, fmt(r.cone_volume), fmt(r.cover_volume)])
    return buf.getvalue()


def table1_json(rows) -> str:
    return json.dumps([{"knot": r.two_n, "N": r.N, "alpha0": r.Z, "volumes": r.volumes,
                        "geometric_volume": r.geometric, "note": r.note} for r in rows], indent=2)


def table2_json(rows) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=2)


def mirror_volume(m: int, alpha=0.0, grid=DEFAULT_GRID) -> float:
    """Volume for a raw crossing count m; odd m is the mirror of an even one."""
    return geometric_volume(normalize_knot(m), alpha, grid)


__all__ = [
    "CoverResult", "DEFAULT_GRID", "Table1Row", "VolumeResult", "classify_angle",
    "cone_volume", "cover_volume", "geometric_volume", "integrate_branch",
    "make_table1", "make_table2", "mirror_volume", "table1_csv", "table1_json",
    "table2_csv", "table2_json",
]
