"""Directions of reflections and the acute and obtuse cones of alcoves.

A hyperplane ``H`` has the side ``H^{w+}`` containing alcoves deep inside the
chamber ``wC``.  A reflection of a facet is *w-opposite* when it moves the
facet from ``H^{w+}`` to ``H^{w-}``, i.e. towards alcoves deep in ``w C-bar``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Iterable, Literal, Optional, Sequence

from ._linalg import dot, solve
from .affine import AffineRoot, AffineWeylGroup, ExtAffineElt, reflect_affine
from .bruhat import bruhat_leq
from .rootdatum import WeylElt, weyl_orbit

__all__ = [
    "side_wplus", "reflection_direction", "acute_cone_contains",
    "regular_base_element", "obtuse_cone_contains_alcove", "obtuse_cone_check",
    "obtuse_cone_contains_point", "coroot_double_step", "chamber_W_of_facet",
    "cJ_contains", "alcove_meets_chamber", "StabilityLog", "stability_log",
    "DirectionError", "InstabilityError",
]

Side = Literal["plus", "minus", "on"]


class DirectionError(ValueError):
    """A reflection direction was requested for a point on the hyperplane."""


class InstabilityError(RuntimeError):
    """The obtuse-cone answer did not stabilise when deepening the base alcove."""


def _w_positive(G: AffineWeylGroup, w: WeylElt, root: int) -> bool:
    """``w^{-1} alpha`` positive, for a positive root index."""
    return root not in G.rd.inversions(w)


def side_wplus(G: AffineWeylGroup, ar: AffineRoot, w: WeylElt, v: Sequence) -> Side:
    """Position of ``v`` relative to ``H^{w+}`` for the hyperplane of ``ar``."""
    ar = G.canonical(ar)
    val = dot(G.rd.roots[ar.root].vec, v) + ar.k
    if val == 0:
        return "on"
    return "plus" if (val > 0) == _w_positive(G, w, ar.root) else "minus"


def reflection_direction(G: AffineWeylGroup, point: Sequence, ar: AffineRoot, w: WeylElt) -> str:
    """``"w-direction"`` or ``"w-opposite"`` for reflecting ``point`` in ``H_ar``."""
    side = side_wplus(G, ar, w, point)
    if side == "on":
        raise DirectionError("point lies on the reflecting hyperplane")
    return "w-direction" if side == "minus" else "w-opposite"


def acute_cone_contains(G: AffineWeylGroup, c, w: WeylElt) -> bool:
    """Membership of the alcove ``c`` (or ``x(a)`` for an element) in ``C(a, w)``:
    every hyperplane separating it from the base alcove is crossed in the
    w-direction."""
    x = c.elt if hasattr(c, "elt") else c
    inv = G.rd.inversions(x.fin)
    for rt in G.rd.positive_roots:
        m = dot(rt.vec, x.trans)
        a = m if rt.index in inv else m - 1
        if a >= 0 and not _w_positive(G, w, rt.index):
            return False
        if a <= -2 and _w_positive(G, w, rt.index):
            return False
    return True


def regular_base_element(G: AffineWeylGroup, w: WeylElt, N: int) -> ExtAffineElt:
    """``z = t_{-N w(2 rho^vee)} w``; ``z(a)`` lies deep inside ``w C-bar``."""
    if N < 1:
        raise ValueError("N must be positive")
    shift = w.act(G.rd.two_rho_vee)
    return ExtAffineElt(tuple(-N * x for x in shift), w)


@dataclass
class StabilityLog:
    """Counts obtuse-cone calls and how many were stable at the first doubling."""

    calls: int = 0
    stable_first: int = 0
    events: list = field(default_factory=list)

    def reset(self) -> None:
        self.calls = self.stable_first = 0
        self.events.clear()


stability_log = StabilityLog()


def _start_depth(G: AffineWeylGroup, mu: Sequence[int]) -> int:
    return 2 * (1 + max(G.length(G.translation(lam)) for lam in weyl_orbit(G.rd, mu)))


def _leq_b(G: AffineWeylGroup, x: ExtAffineElt, y: ExtAffineElt, w: WeylElt, N: int) -> bool:
    zi = regular_base_element(G, w, N).inverse()
    return bruhat_leq(G, zi * x, zi * y)


def obtuse_cone_check(G: AffineWeylGroup, x: ExtAffineElt, w: WeylElt, mu: Sequence[int],
                      log: Optional[StabilityLog] = None) -> tuple[bool, bool]:
    """``(x in B(t_{w mu}(a), w), stable at first doubling)``."""
    log = stability_log if log is None else log
    top = G.translation(w.act(mu))
    n0 = _start_depth(G, mu)
    prev = _leq_b(G, x, top, w, n0)
    N = n0
    for attempt in range(3):
        N *= 2
        cur = _leq_b(G, x, top, w, N)
        if cur == prev:
            log.calls += 1
            if attempt == 0:
                log.stable_first += 1
            else:
                log.events.append((x, w, tuple(mu), N))
            return cur, attempt == 0
        prev = cur
    raise InstabilityError(f"obtuse cone membership unstable up to N = {N}")


def obtuse_cone_contains_alcove(G: AffineWeylGroup, x: ExtAffineElt, w: WeylElt,
                                mu: Sequence[int]) -> bool:
    """Whether ``x(a) <=_b t_{w mu}(a)`` for a sufficiently regular ``b`` in ``w C-bar``."""
    return obtuse_cone_check(G, x, w, mu)[0]


def obtuse_cone_contains_point(G: AffineWeylGroup, q: Sequence, p: Sequence, w: WeylElt) -> bool:
    """Whether ``q`` is reached from ``p`` by reflections in the w-opposite direction."""
    q = tuple(Fraction(x) for x in q)
    p = tuple(Fraction(x) for x in p)
    key = (q, p, w)
    cache = G.__dict__.setdefault("_point_cone_cache", {})
    if key in cache:
        return cache[key]
    if G.point_orbit_rep(p) != G.point_orbit_rep(q):
        raise ValueError("points lie in different W_aff-orbits")
    cache[key] = out = _point_bfs(G, q, p, w)
    return out


def _point_bfs(G: AffineWeylGroup, q: tuple, p: tuple, w: WeylElt) -> bool:
    rd = G.rd
    winv = w.inverse()

    def cone_coeffs(v):
        # coefficients of w^{-1} v in the simple coroots
        return rd.coroot_coefficients(winv.act(v))

    def below_target(r):
        # q in r + w B_0
        c = cone_coeffs(tuple(a - b for a, b in zip(r, q)))
        return c is not None and all(x >= 0 for x in c)

    if q == p:
        return True
    if not below_target(p):
        return False
    # beta with w^{-1} beta positive; w-opposite moves displace by -m beta^vee, m > 0
    betas = []
    for rt in rd.positive_roots:
        idx = rt.index if _w_positive(G, w, rt.index) else rd.negate(rt.index)
        b = rd.roots[idx]
        assert rd.is_positive_covec(winv.act(b.covec))
        betas.append(b)
    seen = {p}
    queue = deque([p])
    while queue:
        r = queue.popleft()
        for b in betas:
            f = dot(b.vec, r)
            m = f - floor(f)
            if m == 0:
                m = Fraction(1)
            while True:
                r2 = tuple(x - m * y for x, y in zip(r, b.covec))
                if not below_target(r2):
                    break
                if r2 == q:
                    return True
                if r2 not in seen:
                    seen.add(r2)
                    queue.append(r2)
                m += 1
    return False


def coroot_double_step(G: AffineWeylGroup, c, root: int, w: WeylElt) -> tuple[AffineRoot, AffineRoot]:
    """Two w-opposite reflections whose product takes the alcove ``c`` to
    ``t_{alpha^vee}(c)``, for ``alpha^vee`` in ``-w R^vee_+``.

    Returned in product order ``(outer, inner)``: ``inner`` is applied first.
    """
    rd = G.rd
    x = c.elt if hasattr(c, "elt") else c
    rt = rd.roots[root]
    if rd.is_positive_covec(w.inverse().act(rt.covec)):
        raise DirectionError("alpha^vee must lie in -w R^vee_+")
    lam0 = x.trans                       # x(0), a vertex of x(a)
    N = -dot(rt.vec, lam0) - 1
    val = dot(rt.vec, x.act(G.barycenter()))
    if -N - 2 < val < -N - 1:
        outer, inner = AffineRoot(root, N), AffineRoot(root, N + 1)
    else:
        outer, inner = AffineRoot(root, N - 1), AffineRoot(root, N)
    pt = x.act(G.barycenter())
    for ar in (inner, outer):
        if reflection_direction(G, pt, ar, w) != "w-opposite":
            raise AssertionError("double step produced a reflection not in the w-opposite direction")
        pt = reflect_affine(rd, ar, pt)
    moved = G.reflection(outer) * G.reflection(inner) * x
    if moved != G.translation(rt.covec) * x:
        raise AssertionError("double step does not translate by alpha^vee")
    return G.canonical(outer), G.canonical(inner)


def chamber_W_of_facet(G: AffineWeylGroup, J: Iterable[int]) -> frozenset[WeylElt]:
    """``W(a_J)``: chambers ``w C`` with ``a_J + w C`` on the base-alcove side
    of every wall in ``J``.  Computed for the barycenter of the facet and for
    each of its vertices; all choices must agree."""
    J = G.require_finite_J(J)
    verts = G.facet_vertices(J)
    bary = tuple(sum(v.point[k] for v in verts) / len(verts) for k in range(G.n))
    answers = set()
    for a in [bary] + [v.point for v in verts]:
        ws = frozenset(
            w for w in G.rd.weyl_group()
            if all(G.wall_value(j, tuple(x + y for x, y in zip(a, w.act(G.rd.two_rho_vee)))) > 0
                   for j in J))
        answers.add(ws)
    if len(answers) != 1:
        raise AssertionError("W(a_J) depends on the choice of a_J")
    return answers.pop()


def cJ_contains(G: AffineWeylGroup, v: Sequence, J: Iterable[int]) -> bool:
    """Membership in the open cone ``C(a_J)``, the intersection of the
    base-alcove sides of the walls in ``J``."""
    return all(G.wall_value(j, v) > 0 for j in G.check_J(J))


def alcove_meets_chamber(G: AffineWeylGroup, x: ExtAffineElt, apex: Sequence, w: WeylElt) -> bool:
    """Whether the alcove ``x(a)`` meets ``cl(apex + w C)`` (semisimple data only)."""
    rd = G.rd
    if rd.dim != rd.rank:
        raise ValueError("requires X_* of the same rank as the root system")
    xinv = x.inverse()
    m = xinv.fin.matrix
    constraints = []
    for lab in G.labels:
        wall = G.walls[lab]
        # f(x^{-1} v) with x^{-1} v = M v + t
        g = tuple(sum(wall.gamma[a] * m[a][c] for a in range(G.n)) for c in range(G.n))
        constraints.append((g, dot(wall.gamma, xinv.trans) + wall.const))
    for i in range(rd.rank):
        g = rd.roots[rd.act_on_root(w, i)].vec
        constraints.append((g, -dot(g, apex)))
    return _open_polytope_nonempty(constraints, G.n)


def _open_polytope_nonempty(constraints, dim) -> bool:
    """Exact test that ``{v : <g, v> + c > 0 for all (g, c)}`` is nonempty,
    assuming the closed polytope is bounded."""
    verts = []
    for rows in combinations(constraints, dim):
        try:
            sol = solve([g for g, _ in rows], [-c for _, c in rows])
        except ValueError:
            continue
        if sol is None:
            continue
        if all(dot(g, sol) + c >= 0 for g, c in constraints):
            verts.append(sol)
    if not verts:
        return False
    center = tuple(sum(v[k] for v in verts) / len(verts) for k in range(dim))
    return all(dot(g, center) + c > 0 for g, c in constraints)
