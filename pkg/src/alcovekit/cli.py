"""Command-line interface: ``alcovekit <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (the message names the offending flag).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from typing import Optional, Sequence

from .admsets import (
    adm_st_contains, enumerate_adm, enumerate_adm_J, enumerate_adm_st, enumerate_perm,
    enumerate_perm_st_J, perm_contains, perm_st_J_contains, saturate, sort_elements,
)
from .affine import AffineWeylGroup, ExtAffineElt, ParahoricError
from .bruhat import bruhat_leq, hasse_dot
from .cones import acute_cone_contains, obtuse_cone_contains_alcove
from .rootdatum import RootDatumError, is_dominant, preset
from .verify import load_grid, run_grid

log = logging.getLogger("alcovekit")

SET_KINDS = ("adm", "perm", "adm-st", "perm-st-j", "adm-j")


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


# -- argument parsing helpers ---------------------------------------------------------

def _group(args) -> AffineWeylGroup:
    try:
        return AffineWeylGroup(preset(args.preset))
    except RootDatumError as exc:
        raise UsageError("--preset", str(exc)) from exc


def _mu(G: AffineWeylGroup, text: Optional[str]) -> tuple[int, ...]:
    if text is None:
        raise UsageError("--mu", "required")
    try:
        mu = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError("--mu", f"expected comma-separated integers, got {text!r}") from exc
    if len(mu) != G.n:
        raise UsageError("--mu", f"expected {G.n} coordinates, got {len(mu)}")
    if not is_dominant(G.rd, mu):
        raise UsageError("--mu", f"{list(mu)} is not dominant")
    return mu


def _J(G: AffineWeylGroup, text: Optional[str]) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        labels = [int(x) for x in text.split(",") if x.strip()]
        return G.require_finite_J(labels)
    except ParahoricError as exc:
        raise UsageError("--j", str(exc)) from exc
    except ValueError as exc:
        raise UsageError("--j", str(exc)) from exc


def _elt(G: AffineWeylGroup, text: Optional[str]) -> ExtAffineElt:
    if text is None:
        raise UsageError("--elt", "required")
    try:
        x = ExtAffineElt.from_json(json.loads(text))
    except (ValueError, TypeError) as exc:
        raise UsageError("--elt", str(exc)) from exc
    if len(x.trans) != G.n:
        raise UsageError("--elt", f"expected dimension {G.n}")
    if not any(w == x.fin for w in G.rd.weyl_group()):
        raise UsageError("--elt", "finite part is not in the Weyl group")
    return x


def _weyl(G: AffineWeylGroup, text: Optional[str]):
    if not text:
        return G.rd.identity
    try:
        word = [int(x) - 1 for x in text.split(",") if x.strip()]
        return G.rd.from_word(word)
    except (ValueError, RootDatumError) as exc:
        raise UsageError("--w", str(exc)) from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -------------------------------------------------------------------------

def cmd_info(args) -> int:
    G = _group(args)
    rd = G.rd
    info = {
        "preset": rd.name,
        "rank": rd.rank,
        "dim": rd.dim,
        "cartan": [list(r) for r in rd.cartan],
        "simple_roots": [list(r) for r in rd.simple_roots],
        "simple_coroots": [list(r) for r in rd.simple_coroots],
        "positive_roots": len(rd.positive_roots),
        "weyl_order": len(rd.weyl_group()),
        "two_rho_vee": list(rd.two_rho_vee),
        "walls": {G.label_name(lab): {"gamma": list(w.gamma), "const": w.const}
                  for lab, w in G.walls.items()},
        "vertices": [{"point": [str(c) for c in v.point],
                      "types": sorted(G.label_name(t) for t in v.types)} for v in G.vertices()],
        "finite_J": [sorted(J) for J in G.proper_finite_subsets()],
    }
    _emit(json.dumps(info, indent=2) + "\n", args.out)
    return 0


def _compute(G, kind: str, mu, J):
    if kind == "adm":
        return enumerate_adm_J(G, mu, J) if J else enumerate_adm(G, mu), {}
    if kind == "adm-j":
        return enumerate_adm_J(G, mu, J), {}
    if kind == "perm":
        return enumerate_perm(G, mu), {"hull_expansion": _hull_expansion(G),
                                       "box": "mu + Q^vee inside Conv(W mu) + (a_0 - w a_0)"}
    if kind == "adm-st":
        s = enumerate_adm_st(G, mu)
        return (saturate(G, s, J, left=False) if J else s), {}
    if kind == "perm-st-j":
        return enumerate_perm_st_J(G, mu, J), {}
    raise ValueError(kind)


def _hull_expansion(G: AffineWeylGroup) -> str:
    """Largest simple-coroot coefficient of the vertex offsets ``a_0 - w a_0``
    by which the translation box extends past ``Conv(W mu)``."""
    a0 = G.vertices()[0].point
    worst = max(abs(c) for w in G.rd.weyl_group()
                for c in G.rd.coroot_coefficients(tuple(a - b for a, b in zip(a0, w.act(a0)))))
    return str(worst)


def cardinality_row(G: AffineWeylGroup, mu, J) -> dict:
    return {
        "preset": G.rd.name,
        "mu": ",".join(map(str, mu)),
        "J": ",".join(map(str, sorted(J))),
        "|Adm^J|": len(enumerate_adm_J(G, mu, J)),
        "|Perm^{st,J}|": len(enumerate_perm_st_J(G, mu, J)),
        "|Adm^st W_J|": len(saturate(G, enumerate_adm_st(G, mu), J, left=False)),
    }


def cmd_set(args) -> int:
    G = _group(args)
    mu = _mu(G, args.mu)
    J = _J(G, args.j)
    fmt = args.format or "json"
    if fmt == "json":
        elements, meta = _compute(G, args.command, mu, J)
        data = [x.to_json() for x in sort_elements(elements)]
        if meta and args.meta:
            data = {"metadata": meta, "elements": data}
        _emit(json.dumps(data) + "\n", args.out)
    elif fmt == "csv":
        row = cardinality_row(G, mu, J)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(row))
        writer.writeheader()
        writer.writerow(row)
        _emit(buf.getvalue(), args.out)
    else:
        raise UsageError("--format", f"{fmt} is not supported for set output (json or csv)")
    return 0


def cmd_query(args) -> int:
    G = _group(args)
    mu = _mu(G, args.mu)
    x = _elt(G, args.elt)
    kind = args.set
    J = _J(G, args.j)
    if kind == "adm":
        tops = {G.translation(w.act(mu)) for w in G.rd.weyl_group()}
        ans = G.same_coset(x, mu) and any(bruhat_leq(G, x, t) for t in tops)
    elif kind == "adm-j":
        ans = x in enumerate_adm_J(G, mu, J)
    elif kind == "perm":
        ans = perm_contains(G, x, mu)
    elif kind == "adm-st":
        ans = adm_st_contains(G, x, mu)
    elif kind == "perm-st-j":
        ans = perm_st_J_contains(G, x, mu, J)
    elif kind == "acute":
        ans = acute_cone_contains(G, x, _weyl(G, args.w))
    elif kind == "obtuse":
        ans = G.same_coset(x, mu) and obtuse_cone_contains_alcove(G, x, _weyl(G, args.w), mu)
    else:
        raise UsageError("--set", f"unknown set {kind!r}")
    _emit(json.dumps(bool(ans)) + "\n", args.out)
    return 0


def cmd_hasse(args) -> int:
    G = _group(args)
    mu = _mu(G, args.mu)
    if args.format not in (None, "dot"):
        raise UsageError("--format", "hasse only writes dot")
    _emit(hasse_dot(G, enumerate_adm(G, mu), name=f"Adm {G.rd.name} {list(mu)}"), args.out)
    return 0


def _euclidean(G: AffineWeylGroup):
    """Coordinates in which the W-invariant form is the standard one."""
    rd = G.rd
    g = [[float(sum(rd.pairing(rt.vec, e_i) * rd.pairing(rt.vec, e_j) for rt in rd.positive_roots))
          for e_j in _units(G.n)] for e_i in _units(G.n)]
    a = math.sqrt(g[0][0])
    b = g[0][1] / a
    c = math.sqrt(g[1][1] - b * b)

    def to_xy(v):
        v0, v1 = float(v[0]), float(v[1])
        return (a * v0 + b * v1, c * v1)
    return to_xy


def _units(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def plot_svg(G: AffineWeylGroup, mu, size: int = 600) -> str:
    """Rank-2 picture: alcoves of ``Adm(mu)`` shaded, ``t_{w mu}(a)`` outlined."""
    rd = G.rd
    if rd.rank != 2 or rd.dim != 2:
        raise UsageError("--preset", "plot needs a rank-2 preset with two-dimensional X_*")
    to_xy = _euclidean(G)
    adm = sort_elements(enumerate_adm(G, mu))
    tops = sort_elements({G.translation(w.act(mu)) for w in rd.weyl_group()})
    polys = {x: [to_xy(p) for p in _ordered(G.alcove_vertices(x))] for x in adm}
    pts = [p for poly in polys.values() for p in poly]
    xmin, xmax = min(p[0] for p in pts), max(p[0] for p in pts)
    ymin, ymax = min(p[1] for p in pts), max(p[1] for p in pts)
    pad = 0.15 * max(xmax - xmin, ymax - ymin, 1.0)
    xmin, xmax, ymin, ymax = xmin - pad, xmax + pad, ymin - pad, ymax + pad
    scale = size / max(xmax - xmin, ymax - ymin)

    def sx(p):
        return ((p[0] - xmin) * scale, (ymax - p[1]) * scale)

    def path(poly):
        return " ".join(f"{x:.2f},{y:.2f}" for x, y in map(sx, poly))

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<title>Adm {rd.name} mu={list(mu)}</title>',
           '<rect width="100%" height="100%" fill="white"/>']
    for x, poly in polys.items():
        out.append(f'<polygon points="{path(poly)}" fill="#9ecae1" stroke="none"/>')
    # affine root hyperplanes through the viewport
    span = max(xmax - xmin, ymax - ymin)
    corners = [(xmin, ymin), (xmin, ymax), (xmax, ymin), (xmax, ymax)]
    inv = _inverse_xy(to_xy)
    for rt in rd.positive_roots:
        vals = [float(rd.pairing(rt.vec, inv(c))) for c in corners]
        d = (-float(rt.vec[1]), float(rt.vec[0]))
        dxy = to_xy(d)
        norm = math.hypot(*dxy) or 1.0
        dxy = (dxy[0] / norm * 3 * span, dxy[1] / norm * 3 * span)
        for k in range(math.floor(min(vals)), math.ceil(max(vals)) + 1):
            p0 = to_xy(tuple(k * float(c) / 2 for c in rt.covec))
            a = (p0[0] - dxy[0], p0[1] - dxy[1])
            b = (p0[0] + dxy[0], p0[1] + dxy[1])
            (x1, y1), (x2, y2) = sx(a), sx(b)
            out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                       'stroke="#888" stroke-width="0.6"/>')
    for t in tops:
        poly = [to_xy(p) for p in _ordered(G.alcove_vertices(t))]
        out.append(f'<polygon points="{path(poly)}" fill="none" stroke="#d62728" stroke-width="2.5"/>')
    base = [to_xy(p) for p in _ordered(G.alcove_vertices(G.identity))]
    out.append(f'<polygon points="{path(base)}" fill="#08519c" fill-opacity="0.6" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _ordered(points):
    """Sort polygon vertices counter-clockwise around their centroid."""
    cx = sum(float(p[0]) for p in points) / len(points)
    cy = sum(float(p[1]) for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p[1]) - cy, float(p[0]) - cx))


def _inverse_xy(to_xy):
    e0, e1 = to_xy((1, 0)), to_xy((0, 1))
    det = e0[0] * e1[1] - e1[0] * e0[1]

    def inv(p):
        return ((p[0] * e1[1] - e1[0] * p[1]) / det, (e0[0] * p[1] - p[0] * e0[1]) / det)
    return inv


def cmd_plot(args) -> int:
    G = _group(args)
    mu = _mu(G, args.mu)
    if args.format not in (None, "svg"):
        raise UsageError("--format", "plot only writes svg")
    _emit(plot_svg(G, mu), args.out)
    return 0


def cmd_verify(args) -> int:
    if not args.grid:
        raise UsageError("--grid", "required")
    try:
        cfg = load_grid(args.grid)
    except FileNotFoundError as exc:
        raise UsageError("--grid", f"no such file {args.grid}") from exc
    except (ValueError, TypeError) as exc:
        raise UsageError("--grid", str(exc)) from exc
    try:
        reports = run_grid(cfg, cache_path=args.cache, jobs=args.jobs,
                           progress=(lambda r: print(r.line(), file=sys.stderr)) if args.verbose else None)
    except (RootDatumError, ParahoricError) as exc:
        raise UsageError("--grid", str(exc)) from exc
    failed = [r for r in reports if not r.ok]
    if args.format == "csv":
        rows = _cardinality_rows(reports)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["preset", "mu", "J", "|Adm^J|",
                                                 "|Perm^{st,J}|", "|Adm^st W_J|"])
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.out)
    else:
        payload = {"cells": len(reports), "failed": len(failed),
                   "reports": [r.to_json() for r in reports]}
        _emit(json.dumps(payload, indent=1) + "\n", args.out)
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed", file=sys.stderr)
    return 1 if failed else 0


def _cardinality_rows(reports) -> list[dict]:
    rows = []
    for r in reports:
        if r.check != "main":
            continue
        rows.append({"preset": r.preset, "mu": ",".join(map(str, r.params["mu"])),
                     "J": ",".join(map(str, r.params["J"])),
                     "|Adm^J|": r.sizes["adm_J"], "|Perm^{st,J}|": r.sizes["perm_st_J"],
                     "|Adm^st W_J|": r.sizes["adm_st_WJ"]})
    return rows


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alcovekit",
                                     description="Admissible sets in extended affine Weyl groups.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mu=True):
        p.add_argument("--preset", required=True, help="e.g. A2-sc, C2-ad, A1-gl, G2")
        if mu:
            p.add_argument("--mu", help="dominant cocharacter, comma-separated integers")
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("info", help="describe a preset")
    common(p, mu=False)
    p.set_defaults(func=cmd_info)

    for name in ("adm", "perm", "adm-st", "perm-st-j"):
        p = sub.add_parser(name, help=f"enumerate the {name} set")
        common(p)
        p.add_argument("--j", help="comma-separated wall labels (0 = affine wall)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--meta", action="store_true", help="wrap json output with metadata")
        p.set_defaults(func=cmd_set)

    p = sub.add_parser("query", help="membership of one element")
    common(p)
    p.add_argument("--elt", help='element as JSON, {"trans": [...], "fin": [[...], ...]}')
    p.add_argument("--set", required=True, choices=SET_KINDS + ("acute", "obtuse"))
    p.add_argument("--j", help="wall labels for adm-j and perm-st-j")
    p.add_argument("--w", help="finite Weyl element as a word in 1..r for the cone sets")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("hasse", help="Hasse diagram of Adm(mu) in DOT format")
    common(p)
    p.add_argument("--format", choices=("dot",), default="dot")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("plot", help="SVG of Adm(mu) for rank-2 presets")
    common(p)
    p.add_argument("--format", choices=("svg",), default="svg")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", help="run a grid of checks from a TOML file")
    p.add_argument("--grid", required=True, help="TOML grid file")
    p.add_argument("--cache", help="resumable result cache (JSON)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
