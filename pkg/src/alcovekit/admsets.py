"""Admissible, permissible and strongly admissible subsets of ``W_aff tau_mu``."""
from __future__ import annotations

from math import ceil, floor
from typing import Iterable, Optional, Sequence

from .affine import AffineWeylGroup, ExtAffineElt, VertexInfo
from .bruhat import lower_closure
from .cones import obtuse_cone_contains_alcove, obtuse_cone_contains_point
from .rootdatum import conv_hull_contains, is_dominant, RootDatumError

__all__ = [
    "enumerate_adm", "enumerate_perm", "perm_contains", "candidate_box",
    "enumerate_adm_J", "perm_st_J_contains", "enumerate_perm_st_J",
    "adm_st_contains", "enumerate_adm_st", "saturate", "sort_elements",
]


def _dominant(G: AffineWeylGroup, mu: Sequence[int]) -> tuple[int, ...]:
    mu = tuple(int(x) for x in mu)
    if len(mu) != G.n:
        raise ValueError(f"mu must have {G.n} coordinates")
    if not is_dominant(G.rd, mu):
        raise RootDatumError(f"mu = {mu} is not dominant")
    return mu


def sort_elements(elements: Iterable[ExtAffineElt]) -> list[ExtAffineElt]:
    return sorted(elements, key=ExtAffineElt.sort_key)


def enumerate_adm(G: AffineWeylGroup, mu: Sequence[int]) -> frozenset[ExtAffineElt]:
    """``Adm(mu)``: everything below some ``t_lambda``, ``lambda`` in ``W mu``."""
    mu = _dominant(G, mu)
    tops = {G.translation(w.act(mu)) for w in G.rd.weyl_group()}
    return lower_closure(G, tops)


def perm_contains(G: AffineWeylGroup, x: ExtAffineElt, mu: Sequence[int],
                  vertices: Optional[Iterable[VertexInfo]] = None) -> bool:
    """``x(a) - a`` in ``Conv(W mu)`` for every vertex ``a`` (default: all of them)."""
    mu = _dominant(G, mu)
    if not G.same_coset(x, mu):
        return False
    verts = G.vertices() if vertices is None else vertices
    for v in verts:
        d = tuple(y - a for y, a in zip(x.act(v.point), v.point))
        if not conv_hull_contains(G.rd, mu, d):
            return False
    return True


def candidate_box(G: AffineWeylGroup, mu: Sequence[int],
                  vertices: Sequence[VertexInfo]) -> frozenset[ExtAffineElt]:
    """Elements of ``W_aff tau_mu`` moving each given vertex ``a`` by a vector
    of ``Conv(W mu)``.

    For each finite part ``w`` the translation ``lambda`` runs over the lattice
    points of ``mu + Q^vee`` in ``Conv(W mu) + (a_0 - w a_0)``.
    """
    mu = _dominant(G, mu)
    rd = G.rd
    if not vertices:
        raise ValueError("need at least one vertex")
    w0 = rd.longest_element()
    lo = rd.coroot_coefficients(tuple(a - b for a, b in zip(w0.act(mu), mu)))
    a0 = vertices[0].point
    out = set()
    for w in rd.weyl_group():
        offset = tuple(a - b for a, b in zip(a0, w.act(a0)))
        off_c = rd.coroot_coefficients(offset)
        ranges = [range(ceil(l + o), floor(o) + 1) for l, o in zip(lo, off_c)]
        for coeffs in _grid(ranges):
            lam = tuple(m + sum(c * cv[k] for c, cv in zip(coeffs, rd.simple_coroots))
                        for k, m in enumerate(mu))
            x = ExtAffineElt(lam, w)
            if perm_contains(G, x, mu, vertices):
                out.add(x)
    return frozenset(out)


def _grid(ranges):
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for tail in _grid(ranges[1:]):
            yield (head,) + tail


def enumerate_perm(G: AffineWeylGroup, mu: Sequence[int]) -> frozenset[ExtAffineElt]:
    """``Perm(mu)``."""
    return candidate_box(G, mu, G.vertices())


def saturate(G: AffineWeylGroup, elements: Iterable[ExtAffineElt], J: Iterable[int],
             left: bool = True, right: bool = True) -> frozenset[ExtAffineElt]:
    """Closure under multiplication by ``W_J`` on the chosen sides."""
    J = sorted(G.require_finite_J(J))
    seen = set(elements)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for lab in J:
                ys = []
                if left:
                    ys.append(G.lmul(lab, x))
                if right:
                    ys.append(G.rmul(x, lab))
                for y in ys:
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def enumerate_adm_J(G: AffineWeylGroup, mu: Sequence[int], J: Iterable[int]) -> frozenset[ExtAffineElt]:
    """``Adm^J(mu) = W_J Adm(mu) W_J``."""
    J = G.require_finite_J(J)
    return saturate(G, enumerate_adm(G, mu), J)


def perm_st_J_contains(G: AffineWeylGroup, x: ExtAffineElt, mu: Sequence[int],
                       J: Iterable[int]) -> bool:
    """Vertexwise obtuse-cone condition at every vertex of type not in ``J``."""
    mu = _dominant(G, mu)
    J = G.require_finite_J(J)
    if not G.same_coset(x, mu):
        return False
    for v in G.facet_vertices(J):
        q = x.act(v.point)
        for w in G.rd.weyl_group():
            p = G.translation(w.act(mu)).act(v.point)
            if not obtuse_cone_contains_point(G, q, p, w):
                return False
    return True


def enumerate_perm_st_J(G: AffineWeylGroup, mu: Sequence[int], J: Iterable[int]) -> frozenset[ExtAffineElt]:
    """``Perm^{st,J}(mu)``, filtered from the box of elements moving each
    vertex of ``a_J`` inside ``Conv(W mu)``."""
    mu = _dominant(G, mu)
    J = G.require_finite_J(J)
    box = candidate_box(G, mu, G.facet_vertices(J))
    return frozenset(x for x in box if perm_st_J_contains(G, x, mu, J))


def adm_st_contains(G: AffineWeylGroup, x: ExtAffineElt, mu: Sequence[int]) -> bool:
    """Membership in the intersection of the obtuse cones ``B(t_{w mu}(a), w)``."""
    mu = _dominant(G, mu)
    if not G.same_coset(x, mu):
        return False
    return all(obtuse_cone_contains_alcove(G, x, w, mu) for w in G.rd.weyl_group())


def enumerate_adm_st(G: AffineWeylGroup, mu: Sequence[int]) -> frozenset[ExtAffineElt]:
    """``Adm^st(mu)``, filtered from ``Perm(mu)``."""
    mu = _dominant(G, mu)
    out = frozenset(x for x in enumerate_perm(G, mu) if adm_st_contains(G, x, mu))
    for x in out:
        if not perm_contains(G, x, mu):
            raise AssertionError("strongly admissible element outside Perm(mu)")
    return out
