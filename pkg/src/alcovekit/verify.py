"""Falsifiable checks of the set-theoretic identities, and grid runs over them.

Every ``check_*`` returns a :class:`Report`; a failing report carries
witnesses with the evidence that separates the compared sets.
"""
from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from .admsets import (
    enumerate_adm, enumerate_adm_J, enumerate_adm_st, enumerate_perm,
    enumerate_perm_st_J, saturate, sort_elements,
)
from .affine import AffineWeylGroup, ExtAffineElt
from .bruhat import bruhat_leq, is_min_coset_rep, lower_closure
from .cones import acute_cone_contains, obtuse_cone_contains_alcove, obtuse_cone_contains_point
from .rootdatum import (
    conv_hull_contains, conv_hull_contains_by_cones, dominant_cochars, preset,
)

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

log = logging.getLogger(__name__)

CACHE_VERSION = 1
CHECKS = ("main", "additivity", "vertexwise", "compatibility",
          "cone_corollary", "conv_remark", "type_a")

__all__ = [
    "Report", "SetCache", "check_main", "check_additivity", "check_vertexwise",
    "check_compatibility", "check_cone_corollary", "check_conv_remark",
    "check_type_a", "GridConfig", "run_grid", "load_grid", "group_for",
]


@dataclass
class Report:
    check: str
    preset: str
    params: dict
    ok: bool
    sizes: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        sizes = " ".join(f"{k}={v}" for k, v in self.sizes.items())
        return f"{status} {self.check} {self.preset} {json.dumps(self.params, sort_keys=True)} {sizes}"

    def to_json(self) -> dict:
        return asdict(self)


_groups: dict[str, AffineWeylGroup] = {}


def group_for(key: str) -> AffineWeylGroup:
    if key not in _groups:
        _groups[key] = AffineWeylGroup(preset(key))
    return _groups[key]


class SetCache:
    """Per-group memo of the enumerated sets, keyed by ``(kind, mu, J)``."""

    def __init__(self, G: AffineWeylGroup):
        self.G = G
        self._store: dict = {}

    def _get(self, key, fn):
        if key not in self._store:
            self._store[key] = fn()
        return self._store[key]

    def adm(self, mu):
        return self._get(("adm", tuple(mu)), lambda: enumerate_adm(self.G, mu))

    def adm_J(self, mu, J):
        J = frozenset(J)
        if not J:
            return self.adm(mu)
        return self._get(("admJ", tuple(mu), J), lambda: enumerate_adm_J(self.G, mu, J))

    def adm_st(self, mu):
        return self._get(("admst", tuple(mu)), lambda: enumerate_adm_st(self.G, mu))

    def perm(self, mu):
        return self._get(("perm", tuple(mu)), lambda: enumerate_perm(self.G, mu))

    def perm_st_J(self, mu, J):
        J = frozenset(J)
        return self._get(("permst", tuple(mu), J), lambda: enumerate_perm_st_J(self.G, mu, J))


def _caches(G: AffineWeylGroup) -> SetCache:
    c = G.__dict__.get("_set_cache")
    if c is None:
        c = G.__dict__["_set_cache"] = SetCache(G)
    return c


def _enc(x: ExtAffineElt) -> dict:
    return x.to_json()


def _J(J) -> list:
    return sorted(J)


def _name(G: AffineWeylGroup) -> str:
    return G.rd.name


def explain_adm_st(G: AffineWeylGroup, x: ExtAffineElt, mu) -> dict:
    for w in G.rd.weyl_group():
        if not obtuse_cone_contains_alcove(G, x, w, mu):
            return {"test": "obtuse cone", "w_word": list(G.rd.weyl_word(w))}
    return {"test": "obtuse cone", "result": "member"}


def explain_perm_st_J(G: AffineWeylGroup, x: ExtAffineElt, mu, J) -> dict:
    for v in G.facet_vertices(J):
        for w in G.rd.weyl_group():
            p = G.translation(w.act(mu)).act(v.point)
            q = x.act(v.point)
            if not obtuse_cone_contains_point(G, q, p, w):
                return {"test": "point cone", "vertex": [str(c) for c in v.point],
                        "vertex_types": sorted(v.types), "w_word": list(G.rd.weyl_word(w))}
    return {"test": "point cone", "result": "member"}


def _diff_witnesses(G, named: dict[str, frozenset], explain=None, limit: int = 5) -> list:
    union = frozenset().union(*named.values())
    out = []
    for x in sort_elements(union):
        member = {k: x in v for k, v in named.items()}
        if all(member.values()):
            continue
        wit = {"element": _enc(x), "length": G.length(x), "membership": member}
        if explain is not None:
            wit["evidence"] = explain(x)
        out.append(wit)
        if len(out) >= limit:
            break
    return out


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed = round(time.perf_counter() - t, 4)
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def check_main(G: AffineWeylGroup, mu: Sequence[int], J: Iterable[int] = ()) -> Report:
    """``Adm^st(mu) W_J = Perm^{st,J}(mu) = Adm^J(mu)``, each side computed
    by its own enumeration."""
    J = G.require_finite_J(J)
    sc = _caches(G)
    sets = {
        "adm_st_WJ": saturate(G, sc.adm_st(mu), J, left=False),
        "perm_st_J": sc.perm_st_J(mu, J),
        "adm_J": sc.adm_J(mu, J),
    }
    ok = len(set(sets.values())) == 1

    def explain(x):
        return {"adm_st": explain_adm_st(G, x, mu) if G.same_coset(x, mu) else "wrong coset",
                "perm_st_J": explain_perm_st_J(G, x, mu, J)}

    wit = [] if ok else _diff_witnesses(G, sets, explain)
    return Report("main", _name(G), {"mu": list(mu), "J": _J(J)}, ok,
                  {k: len(v) for k, v in sets.items()}, wit)


@_timed
def check_additivity(G: AffineWeylGroup, mu: Sequence[int], nu: Sequence[int],
                     J: Iterable[int] = ()) -> Report:
    """``Adm^J(mu + nu) = Adm^J(mu) Adm^J(nu)``."""
    J = G.require_finite_J(J)
    sc = _caches(G)
    total = tuple(a + b for a, b in zip(mu, nu))
    lhs = sc.adm_J(total, J)
    A, B = sc.adm_J(mu, J), sc.adm_J(nu, J)
    rhs = frozenset(x * y for x in A for y in B)
    ok = lhs == rhs

    def explain(x):
        fac = next(((a, b) for a in A for b in B if a * b == x), None)
        return {"factorisation": None if fac is None else [_enc(fac[0]), _enc(fac[1])]}

    wit = [] if ok else _diff_witnesses(G, {"adm_J_sum": lhs, "product": rhs}, explain)
    return Report("additivity", _name(G), {"mu": list(mu), "nu": list(nu), "J": _J(J)}, ok,
                  {"adm_J_sum": len(lhs), "product": len(rhs)}, wit)


@_timed
def check_vertexwise(G: AffineWeylGroup, mu: Sequence[int], family: Sequence[Iterable[int]]) -> Report:
    """``Adm^K(mu) = intersection of Adm^J(mu)`` over the family, ``K`` its intersection."""
    family = [G.require_finite_J(J) for J in family]
    if not family:
        raise ValueError("empty family")
    K = frozenset.intersection(*family)
    sc = _caches(G)
    lhs = sc.adm_J(mu, K)
    rhs = frozenset.intersection(*(sc.adm_J(mu, J) for J in family))
    ok = lhs == rhs
    wit = [] if ok else _diff_witnesses(G, {"adm_K": lhs, "intersection": rhs},
                                        lambda x: {"in": [_J(J) for J in family if x in sc.adm_J(mu, J)]})
    return Report("vertexwise", _name(G),
                  {"mu": list(mu), "family": [_J(J) for J in family], "K": _J(K)}, ok,
                  {"adm_K": len(lhs), "intersection": len(rhs)}, wit)


@_timed
def check_compatibility(G: AffineWeylGroup, mu: Sequence[int], J: Iterable[int]) -> Report:
    """``Adm^J(mu) cap W~^J = Adm(mu) cap W~^J``."""
    J = G.require_finite_J(J)
    sc = _caches(G)
    lhs = frozenset(x for x in sc.adm_J(mu, J) if is_min_coset_rep(G, x, J))
    rhs = frozenset(x for x in sc.adm(mu) if is_min_coset_rep(G, x, J))
    ok = lhs == rhs
    wit = [] if ok else _diff_witnesses(G, {"adm_J_min": lhs, "adm_min": rhs})
    return Report("compatibility", _name(G), {"mu": list(mu), "J": _J(J)}, ok,
                  {"adm_J_min": len(lhs), "adm_min": len(rhs)}, wit)


@_timed
def check_cone_corollary(G: AffineWeylGroup, mu: Sequence[int]) -> Report:
    """Every ``x`` in ``Adm(mu)`` with ``x(a)`` in ``C(a, w)`` satisfies ``x <= t_{w mu}``."""
    sc = _caches(G)
    pairs = violations = 0
    wit = []
    for x in sort_elements(sc.adm(mu)):
        for w in G.rd.weyl_group():
            if acute_cone_contains(G, x, w):
                pairs += 1
                if not bruhat_leq(G, x, G.translation(w.act(mu))):
                    violations += 1
                    if len(wit) < 5:
                        wit.append({"element": _enc(x), "w_word": list(G.rd.weyl_word(w)),
                                    "evidence": "in acute cone but not below t_{w mu}"})
    return Report("cone_corollary", _name(G), {"mu": list(mu)}, violations == 0,
                  {"pairs": pairs, "violations": violations}, wit)


def _box_points(G: AffineWeylGroup, mu, radius: Optional[int] = None):
    bound = radius if radius is not None else 2 * max(1, max(abs(c) for c in mu))
    return product(range(-bound, bound + 1), repeat=G.n)


@_timed
def check_conv_remark(G: AffineWeylGroup, mu: Sequence[int], radius: Optional[int] = None) -> Report:
    """Hull identities (i), (ii) on a box of lattice points and their alcove
    analogues (I), (II)."""
    rd = G.rd
    sc = _caches(G)
    wit = []
    checked = 0
    weyl = rd.weyl_group()
    for v in _box_points(G, mu, radius):
        checked += 1
        a = conv_hull_contains(rd, mu, v)
        if a != conv_hull_contains_by_cones(rd, mu, v):
            wit.append({"identity": "i", "point": list(v)})
        for w in weyl:
            winv = w.inverse()
            u = winv.act(v)
            if all(sum(x * y for x, y in zip(al, u)) > 0 for al in rd.simple_roots):
                c = rd.coroot_coefficients(tuple(m - x for m, x in zip(mu, u)))
                in_cone = c is not None and all(x >= 0 for x in c)
                if in_cone != a:
                    wit.append({"identity": "ii", "point": list(v), "w_word": list(rd.weyl_word(w))})
    adm = sc.adm(mu)
    if adm != sc.adm_st(mu):
        wit.append({"identity": "I", "difference": [_enc(x) for x in sort_elements(adm ^ sc.adm_st(mu))][:5]})
    for w in weyl:
        t = G.translation(w.act(mu))
        lhs = frozenset(x for x in adm if acute_cone_contains(G, x, w))
        rhs = frozenset(x for x in lower_closure(G, [t]) if acute_cone_contains(G, x, w))
        if lhs != rhs:
            wit.append({"identity": "II", "w_word": list(rd.weyl_word(w)),
                        "difference": [_enc(x) for x in sort_elements(lhs ^ rhs)][:5]})
    return Report("conv_remark", _name(G), {"mu": list(mu)}, not wit,
                  {"points": checked, "adm": len(adm)}, wit[:10])


@_timed
def check_type_a(G: AffineWeylGroup, mu: Sequence[int]) -> Report:
    """``Adm(mu) = Perm(mu)`` (expected in type A)."""
    sc = _caches(G)
    sets = {"adm": sc.adm(mu), "perm": sc.perm(mu)}
    ok = sets["adm"] == sets["perm"]
    wit = [] if ok else _diff_witnesses(G, sets)
    return Report("type_a", _name(G), {"mu": list(mu)}, ok, {k: len(v) for k, v in sets.items()}, wit)


# -- grids ---------------------------------------------------------------------------

@dataclass
class GridConfig:
    presets: list[str]
    max_length: int = 8
    mus: dict = field(default_factory=dict)
    j_policy: str = "all-proper"
    custom_j: list = field(default_factory=list)
    checks: list[str] = field(default_factory=lambda: list(CHECKS))
    additivity_j: str = "singletons"
    cache: Optional[str] = None

    def __post_init__(self):
        if self.j_policy not in ("all-proper", "singletons", "custom"):
            raise ValueError(f"j_policy must be all-proper, singletons or custom, not {self.j_policy!r}")
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}")


def load_grid(path) -> GridConfig:
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    known = set(GridConfig.__dataclass_fields__)
    extra = set(data) - known
    if extra:
        raise ValueError(f"unknown grid keys {sorted(extra)}")
    if "presets" not in data:
        raise ValueError("grid needs a 'presets' list")
    return GridConfig(**data)


def _mus(G: AffineWeylGroup, cfg: GridConfig) -> list[tuple[int, ...]]:
    explicit = cfg.mus.get(G.rd.name) or cfg.mus.get(G.rd.name.removesuffix("-sc"))
    if explicit:
        return [tuple(m) for m in explicit]
    return [tuple(m) for m in dominant_cochars(G.rd, cfg.max_length)]


def _js(G: AffineWeylGroup, policy: str, custom: list) -> list[frozenset]:
    if policy == "all-proper":
        return G.proper_finite_subsets()
    if policy == "singletons":
        return [frozenset()] + [frozenset([lab]) for lab in G.labels]
    return [G.require_finite_J(J) for J in custom]


def grid_cells(cfg: GridConfig) -> list[tuple]:
    """All ``(check, preset, args)`` cells of a grid, in canonical order."""
    cells = []
    for key in cfg.presets:
        G = group_for(key)
        mus = _mus(G, cfg)
        js = _js(G, cfg.j_policy, cfg.custom_j)
        for mu in mus:
            if "main" in cfg.checks:
                cells += [("main", key, (mu, tuple(sorted(J)))) for J in js]
            if "compatibility" in cfg.checks:
                cells += [("compatibility", key, (mu, tuple(sorted(J)))) for J in js if J]
            if "cone_corollary" in cfg.checks:
                cells.append(("cone_corollary", key, (mu,)))
            if "conv_remark" in cfg.checks:
                cells.append(("conv_remark", key, (mu,)))
            if "type_a" in cfg.checks and G.rd.name.startswith("A"):
                cells.append(("type_a", key, (mu,)))
            if "vertexwise" in cfg.checks:
                maximal = [frozenset(G.labels) - {lab} for lab in G.labels]
                for r in range(1, len(maximal) + 1):
                    for fam in combinations(maximal, r):
                        if all(G.is_finite_J(J) for J in fam):
                            cells.append(("vertexwise", key, (mu, tuple(tuple(sorted(J)) for J in fam))))
        if "additivity" in cfg.checks:
            ajs = _js(G, cfg.additivity_j, cfg.custom_j)
            for i, mu in enumerate(mus):
                for nu in mus[i:]:
                    total = tuple(a + b for a, b in zip(mu, nu))
                    if G.length(G.translation(total)) <= cfg.max_length:
                        cells += [("additivity", key, (mu, nu, tuple(sorted(J)))) for J in ajs]
    return cells


_RUNNERS = {
    "main": lambda G, mu, J: check_main(G, mu, J),
    "compatibility": lambda G, mu, J: check_compatibility(G, mu, J),
    "cone_corollary": lambda G, mu: check_cone_corollary(G, mu),
    "conv_remark": lambda G, mu: check_conv_remark(G, mu),
    "type_a": lambda G, mu: check_type_a(G, mu),
    "vertexwise": lambda G, mu, fam: check_vertexwise(G, mu, fam),
    "additivity": lambda G, mu, nu, J: check_additivity(G, mu, nu, J),
}


def run_cell(cell: tuple) -> Report:
    check, key, args = cell
    return _RUNNERS[check](group_for(key), *args)


def cell_key(cell: tuple) -> str:
    payload = json.dumps([CACHE_VERSION, cell[0], cell[1], _jsonable(cell[2])], sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _jsonable(obj: Any):
    if isinstance(obj, (tuple, list, frozenset, set)):
        items = [_jsonable(x) for x in obj]
        return sorted(items) if isinstance(obj, (frozenset, set)) else items
    return obj


class ResultCache:
    """Content-addressed JSON store of finished grid cells."""

    def __init__(self, path: Optional[str]):
        self.path = Path(path) if path else None
        self.data = {"version": CACHE_VERSION, "results": {}}
        if self.path and self.path.exists():
            loaded = json.loads(self.path.read_text())
            if loaded.get("version") == CACHE_VERSION:
                self.data = loaded
            else:
                log.warning("ignoring cache %s with version %s", self.path, loaded.get("version"))

    def get(self, key: str) -> Optional[Report]:
        rec = self.data["results"].get(key)
        return Report(**rec) if rec else None

    def put(self, key: str, rep: Report) -> None:
        self.data["results"][key] = rep.to_json()
        if self.path:
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            tmp.write_text(json.dumps(self.data, indent=1, sort_keys=True))
            tmp.replace(self.path)


def run_grid(cfg: GridConfig, cache_path: Optional[str] = None, jobs: int = 1,
             progress=None) -> list[Report]:
    """Run every cell of the grid, reusing cached results when available."""
    cache = ResultCache(cache_path or cfg.cache)
    cells = grid_cells(cfg)
    todo = [c for c in cells if cache.get(cell_key(c)) is None]
    if jobs > 1 and todo:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for cell, rep in zip(todo, pool.map(run_cell, todo)):
                cache.put(cell_key(cell), rep)
                if progress:
                    progress(rep)
    else:
        for cell in todo:
            rep = run_cell(cell)
            cache.put(cell_key(cell), rep)
            if progress:
                progress(rep)
    return [cache.get(cell_key(c)) for c in cells]
