"""Command-line interface: ``conevol <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 domain error (unknot, torus knot,
angle out of range), 3 numerical failure (root iteration or branch
tracking did not converge).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .apoly import build_apoly
from .branch_solver import ContinuationError, critical_angles, trace_branch
from .distance_poly import DomainError, KnotIndex, build_distance_poly, normalize_knot
from .exact_poly import BivarIntPoly
from .rep_oracle import DegenerateParameters
from .roots import ConvergenceError
from .schlaefli_volume import (DEFAULT_GRID, classify_angle, cone_volume, cover_volume, make_table1,
                               make_table2, table1_csv, table1_json, table2_csv, table2_json)
from .verify import run_all

COMMANDS = ("volume", "cover", "alpha0", "table1", "table2", "branch", "apoly", "dpoly", "verify")

EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Angle:
    """An angle in radians; ``k`` is set when it was written as 2pi/k."""

    value: float
    text: str
    k: int | None = None


_PI_RE = re.compile(r"^\s*(\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")


def parse_angle(text: str) -> Angle:
    """Radians as a float, or an exact multiple of pi such as "2pi/7"."""
    m = _PI_RE.match(text.lower())
    if m:
        num = int(m.group(1)) if m.group(1) else 1
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise UsageError(f"bad angle {text!r}")
        frac = Fraction(num, den)
        ratio = Fraction(2) / frac if frac else None
        k = int(ratio) if ratio is not None and ratio.denominator == 1 else None
        # 2pi/k is evaluated as one rounding of 2*pi/k, the same value the
        # table code uses
        value = 2 * math.pi / k if k else num * math.pi / den
        return Angle(value, text, k)
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"bad angle {text!r}; use radians or e.g. 2pi/5") from None
    if not math.isfinite(value):
        raise UsageError("angle must be finite")
    return Angle(value, text)


def parse_range(text: str):
    """Inclusive integer range "a..b"."""
    m = re.match(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$", text)
    if not m:
        raise UsageError(f"bad range {text!r}; expected a..b")
    a, b = int(m.group(1)), int(m.group(2))
    if a > b:
        raise UsageError("empty range")
    return list(range(a, b + 1))


@dataclass
class RunConfig:
    command: str
    knot: KnotIndex | None = None
    alpha: Angle | None = None
    k: int | None = None
    grid: int = DEFAULT_GRID
    tol: float = 1e-12
    format: str = "text"
    output: str | None = None
    seed: int = 0
    seed_all: bool = False
    spacing: str = "graded"
    range_m: list = field(default_factory=list)
    k_range: list = field(default_factory=list)
    samples: int = 100


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_DEFAULT_FORMAT = {"volume": "json", "cover": "text", "alpha0": "text", "table1": "csv",
                   "table2": "csv", "branch": "csv", "apoly": "json", "dpoly": "json",
                   "verify": "json"}


def _build_parser():
    p = _Parser(prog="conevol", description="Volumes of hyperbolic twist-knot cone-manifolds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, knot=True):
        if knot:
            g = sp.add_mutually_exclusive_group(required=True)
            g.add_argument("--n", type=int, help="half-index n of the knot T_2n")
            g.add_argument("--m", type=int, help="crossing count m of T_m (odd m allowed)")
            sp.add_argument("--raw-m", action="store_true",
                            help="read the --n value as a crossing count m")
        sp.add_argument("--grid", type=int, default=None,
                        help=f"Simpson intervals (even, >= 1000; default {DEFAULT_GRID} or $CONEVOL_GRID)")
        sp.add_argument("--tol", type=float, default=1e-12)
        sp.add_argument("--format", choices=("csv", "json", "text"), default=None)
        sp.add_argument("--output", "-o", default=None)
        sp.add_argument("--spacing", choices=("graded", "uniform"), default="graded",
                        help="node spacing in alpha (graded is the default)")

    sp = sub.add_parser("volume", help="cone-manifold volume at one angle")
    common(sp)
    sp.add_argument("--alpha", default="0", help='radians, or "2pi/k"')
    sp.add_argument("--seed-all", action="store_true", help="print every branch in text mode")
    sp = sub.add_parser("cover", help="volume of the k-fold cyclic cover")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp = sub.add_parser("alpha0", help="critical angles, largest first")
    common(sp)
    sp = sub.add_parser("table1", help="volumes at alpha = 0 for a range of crossing counts 2n")
    common(sp, knot=False)
    sp.add_argument("--range", default="-18..18", help="range of 2n, e.g. -18..18")
    sp = sub.add_parser("table2", help="cone and cover volumes for k in a range")
    common(sp, knot=False)
    sp.add_argument("--range", default="-18..18", help="range of 2n, e.g. 2..18")
    sp.add_argument("--k-range", default="3..10")
    sp = sub.add_parser("branch", help="dump one branch as CSV")
    common(sp)
    sp.add_argument("--seed", type=int, default=0, help="index of the critical angle (0 = largest)")
    sp = sub.add_parser("apoly", help="A-polynomial term list")
    common(sp)
    sp = sub.add_parser("dpoly", help="distance polynomial term list")
    common(sp)
    sp = sub.add_parser("verify", help="run the residual suites for one knot")
    common(sp)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0, help="random seed")
    return p


def _glue_ranges(argv):
    """Turn "--range -18..18" into "--range=-18..18"; argparse would take the
    leading minus for an option."""
    out, it = [], iter(argv)
    for a in it:
        if a in ("--range", "--k-range"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def parse_args(argv) -> RunConfig:
    ns = _build_parser().parse_args(_glue_ranges(list(argv)))
    cfg = RunConfig(ns.command)
    if getattr(ns, "n", None) is not None:
        cfg.knot = normalize_knot(ns.n) if ns.raw_m else KnotIndex(ns.n)
    elif getattr(ns, "m", None) is not None:
        cfg.knot = normalize_knot(ns.m)
    grid = ns.grid
    if grid is None:
        env = os.environ.get("CONEVOL_GRID")
        try:
            grid = int(env) if env else DEFAULT_GRID
        except ValueError:
            raise UsageError(f"CONEVOL_GRID={env!r} is not an integer") from None
    if grid < 1000 or grid % 2:
        raise UsageError("grid must be even and at least 1000")
    cfg.grid = grid
    if not 0 < ns.tol <= 1e-6:
        raise UsageError("tol must lie in (0, 1e-6]")
    cfg.tol = ns.tol
    cfg.format = ns.format or _DEFAULT_FORMAT[ns.command]
    cfg.output = ns.output
    cfg.spacing = ns.spacing
    if ns.command == "volume":
        cfg.alpha = parse_angle(ns.alpha)
        cfg.seed_all = ns.seed_all
    if ns.command == "cover":
        if ns.k < 3:
            raise UsageError("k must be at least 3")
        cfg.k = ns.k
    if ns.command in ("table1", "table2"):
        cfg.range_m = [m for m in parse_range(ns.range) if m % 2 == 0 and m != 0]
    if ns.command == "table2":
        cfg.k_range = parse_range(ns.k_range)
        if min(cfg.k_range) < 3:
            raise UsageError("k must be at least 3")
        cfg.range_m = [m for m in cfg.range_m if m != -2]
    if ns.command == "branch":
        cfg.seed = ns.seed
    if ns.command == "verify":
        cfg.samples = ns.samples
        cfg.seed = ns.seed
    return cfg


def _fmt(x):
    return f"{x:.6f}"


def _emit_volume(cfg, res):
    if cfg.format == "json":
        return json.dumps(res.to_dict(), indent=2) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["2n", "alpha", "seed", "alpha0", "volume", "geometric"])
        for i, (a0, v) in enumerate(res.branch_volumes):
            w.writerow([res.knot.two_n, repr(res.alpha), i, repr(a0), repr(v),
                        int(a0 == res.alpha0_used)])
        return buf.getvalue()
    lines = [_fmt(res.geometric_volume)]
    if cfg.seed_all:
        lines = [f"{_fmt(a0)} {_fmt(v)}" for a0, v in res.branch_volumes] + lines
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> str:
    """Execute a parsed configuration and return the text to emit."""
    c = cfg.command
    if c == "volume":
        knot = cfg.knot.require_hyperbolic()
        a = cfg.alpha
        if not 0.0 <= a.value <= math.pi:
            raise DomainError("alpha must lie in [0, pi]")
        res = cone_volume(knot, a.value, cfg.grid, cfg.spacing, cfg.tol)
        if a.k is not None and a.k >= 3 and classify_angle(knot, a.k) != "hyperbolic":
            # 2pi/k sits on or past the largest critical angle
            res.hyperbolic = False
            res.branch_volumes = [(a0, 0.0) for a0, _ in res.branch_volumes]
            res.geometric_volume = 0.0
        return _emit_volume(cfg, res)
    if c == "cover":
        r = cover_volume(cfg.knot, cfg.k, cfg.grid, cfg.spacing, cfg.tol)
        if cfg.format == "json":
            return json.dumps(r.to_dict(), indent=2) + "\n"
        if cfg.format == "csv":
            cone = "" if r.cone_volume is None else _fmt(r.cone_volume)
            cov = "" if r.cover_volume is None else _fmt(r.cover_volume)
            return f"2n,k,structure,cone_volume,cover_volume\n{r.knot.two_n},{r.k},{r.structure},{cone},{cov}\n"
        if r.structure != "hyperbolic":
            return r.structure + "\n"
        return f"{_fmt(r.cone_volume)} {_fmt(r.cover_volume)}\n"
    if c == "alpha0":
        ca = critical_angles(cfg.knot)
        if cfg.format == "json":
            return json.dumps({"knot": cfg.knot.two_n, "alpha0": ca.alphas}, indent=2) + "\n"
        if cfg.format == "csv":
            return "seed,alpha0\n" + "".join(f"{i},{a!r}\n" for i, a in enumerate(ca.alphas))
        return "".join(f"{a:.6g}\n" for a in ca.alphas)
    if c == "table1":
        rows = make_table1([m // 2 for m in cfg.range_m], cfg.grid, cfg.spacing, cfg.tol)
        return table1_json(rows) + "\n" if cfg.format == "json" else table1_csv(rows)
    if c == "table2":
        rows = make_table2([m // 2 for m in cfg.range_m], cfg.k_range, cfg.grid, cfg.spacing, cfg.tol)
        return table2_json(rows) + "\n" if cfg.format == "json" else table2_csv(rows)
    if c == "branch":
        ca = critical_angles(cfg.knot)
        if not 0 <= cfg.seed < ca.count:
            raise UsageError(f"seed must lie in 0..{ca.count - 1}")
        b = trace_branch(cfg.knot, ca.alphas[cfg.seed], cfg.grid, 0.0, cfg.spacing, cfg.tol)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "re_V", "im_V", "abs_L"])
        for a, V, L in b.samples():
            w.writerow([repr(a), repr(V.real), repr(V.imag), repr(abs(L))])
        return buf.getvalue()
    if c == "apoly":
        ap = build_apoly(cfg.knot.require_hyperbolic())
        return json.dumps({"knot": ap.knot.two_n, "variables": ["L", "M"],
                           "terms": ap.term_list(), "stripped_monomial": list(ap.stripped_monomial),
                           "notes": list(ap.notes)}) + "\n"
    if c == "dpoly":
        dp = build_distance_poly(cfg.knot)
        return json.dumps(dpoly_to_json(dp)) + "\n"
    if c == "verify":
        res = run_all(cfg.knot, cfg.samples, cfg.seed, cfg.grid)
        if cfg.format == "json":
            return json.dumps(res, indent=2) + "\n"
        return "".join(f"{k:24s} {v:.3e}\n" for k, v in res.items())
    raise UsageError(f"unknown command {c!r}")


def dpoly_to_json(dp):
    return {"knot": dp.knot.two_n, "variables": ["V", "B"],
            "terms": [[i, j, str(c)] for i, j, c in dp.poly.terms()]}


def dpoly_from_json(obj):
    return BivarIntPoly({(int(i), int(j)): int(c) for i, j, c in obj["terms"]}, tuple(obj["variables"]))


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
        text = run(cfg)
    except UsageError as e:
        print(f"conevol: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, DegenerateParameters) as e:
        print(f"conevol: domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ContinuationError, ConvergenceError, ArithmeticError) as e:
        print(f"conevol: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
