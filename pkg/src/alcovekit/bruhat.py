"""Bruhat order on the extended affine Weyl group and parabolic quotients.

``x <= y`` requires equal Omega-components; the recursion only ever
multiplies on the left by simple reflections, which preserves them, so it
runs directly on extended elements.
"""
from __future__ import annotations

from typing import Iterable, Literal

from .affine import AffineWeylGroup, ExtAffineElt

__all__ = [
    "bruhat_leq", "coset_decompose", "min_coset_rep", "is_min_coset_rep",
    "proj_min", "lower_closure", "bruhat_min", "covers", "hasse_dot",
]

Side = Literal["right", "left"]


def bruhat_leq(G: AffineWeylGroup, x: ExtAffineElt, y: ExtAffineElt) -> bool:
    """Bruhat order via the lifting property: if ``sy < y`` then
    ``x <= y`` iff ``min(x, sx) <= sy``."""
    lx, ly = G.length(x), G.length(y)
    while True:
        if lx > ly:
            return False
        if lx == ly:
            return x == y
        s = next(lab for lab in G.labels if G.is_left_descent(lab, y))
        y = G.lmul(s, y)
        ly -= 1
        if G.is_left_descent(s, x):
            x = G.lmul(s, x)
            lx -= 1


def bruhat_min(G: AffineWeylGroup, x: ExtAffineElt, y: ExtAffineElt) -> ExtAffineElt:
    """The smaller of two comparable elements (e.g. ``x`` and ``sx``)."""
    return x if G.length(x) <= G.length(y) else y


def coset_decompose(G: AffineWeylGroup, x: ExtAffineElt, J: Iterable[int],
                    side: Side = "right") -> tuple[ExtAffineElt, ExtAffineElt]:
    """Split ``x`` along a parabolic coset.

    ``side="right"``: ``x = x^J x_J`` with ``x^J`` minimal in ``x W_J``;
    returns ``(x^J, x_J)``.  ``side="left"``: ``x = x_J' (^J x)`` with
    ``^J x`` minimal in ``W_J x``; returns ``(^J x, x_J')``.
    """
    J = G.require_finite_J(J)
    m = min_coset_rep(G, x, J, side)
    if side == "right":
        return m, m.inverse() * x
    return m, x * m.inverse()


def min_coset_rep(G: AffineWeylGroup, x: ExtAffineElt, J: Iterable[int],
                  side: Side = "right") -> ExtAffineElt:
    J = tuple(sorted(G.check_J(J)))
    cur = x
    while True:
        for lab in J:
            if side == "right":
                if G.is_right_descent(cur, lab):
                    cur = G.rmul(cur, lab)
                    break
            elif G.is_left_descent(lab, cur):
                cur = G.lmul(lab, cur)
                break
        else:
            return cur


def is_min_coset_rep(G: AffineWeylGroup, x: ExtAffineElt, J: Iterable[int],
                     side: Side = "right") -> bool:
    """Membership in ``W~^J`` (right) or ``^J W~`` (left)."""
    J = G.check_J(J)
    if side == "right":
        return not any(G.is_right_descent(x, lab) for lab in J)
    return not any(G.is_left_descent(lab, x) for lab in J)


def proj_min(G: AffineWeylGroup, x: ExtAffineElt, s: int, J: Iterable[int]) -> ExtAffineElt:
    """``(sx)^J`` for ``sx < x``, checked against ``min{x^J, s x^J}``."""
    if not G.is_left_descent(s, x):
        raise ValueError(f"s_{s} is not a left descent of x")
    sxJ = min_coset_rep(G, G.lmul(s, x), J)
    xJ = min_coset_rep(G, x, J)
    expected = bruhat_min(G, xJ, G.lmul(s, xJ))
    if sxJ != expected:
        raise AssertionError("(sx)^J differs from min{x^J, s x^J}")
    return sxJ


def _coatoms(G: AffineWeylGroup, y: ExtAffineElt) -> set[ExtAffineElt]:
    """Elements covered by ``y``: delete one letter of a fixed reduced word."""
    word, tau = G.reduced_word(y)
    k = len(word)
    prefixes = [G.identity]
    for lab in word:
        prefixes.append(G.rmul(prefixes[-1], lab))
    suffixes = [tau] * (k + 1)
    for j in range(k - 1, -1, -1):
        suffixes[j] = G.lmul(word[j], suffixes[j + 1])
    out = set()
    for j in range(k):
        z = prefixes[j] * suffixes[j + 1]
        if G.length(z) == k - 1:
            out.add(z)
    return out


def lower_closure(G: AffineWeylGroup, tops: Iterable[ExtAffineElt]) -> frozenset[ExtAffineElt]:
    """``{x : x <= y for some y in tops}``."""
    seen: set[ExtAffineElt] = set()
    frontier = [t for t in set(tops)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for y in frontier:
            for z in _coatoms(G, y):
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return frozenset(seen)


def covers(G: AffineWeylGroup, elements: Iterable[ExtAffineElt]) -> list[tuple[ExtAffineElt, ExtAffineElt]]:
    """Cover relations ``(x, y)``, ``x < y`` with ``l(y) = l(x) + 1``, inside
    a downward-closed set."""
    elems = set(elements)
    out = []
    for y in elems:
        for z in _coatoms(G, y):
            if z in elems:
                out.append((z, y))
    return sorted(out, key=lambda p: (G.length(p[1]), p[1].sort_key(), p[0].sort_key()))


def element_label(G: AffineWeylGroup, x: ExtAffineElt) -> str:
    word = G.rd.weyl_word(x.fin)
    fin = "".join(f"s{i + 1}" for i in word) or "e"
    return f"t{list(x.trans)} {fin}"


def hasse_dot(G: AffineWeylGroup, elements: Iterable[ExtAffineElt], name: str = "bruhat") -> str:
    """Hasse diagram (covers only) of a downward-closed set, in DOT format."""
    elems = sorted(set(elements), key=lambda x: (G.length(x), x.sort_key()))
    ids = {x: f"n{i}" for i, x in enumerate(elems)}
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for x in elems:
        lines.append(f'  {ids[x]} [label="{element_label(G, x)}\\nl={G.length(x)}"];')
    for lo, hi in covers(G, elems):
        lines.append(f"  {ids[lo]} -> {ids[hi]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
