"""Based reduced root data, finite Weyl groups and convex hulls of Weyl orbits.

Coordinates: ``X_*`` (cocharacters) and ``X^*`` (characters) are both ``Z^n``
with the standard pairing.  A Weyl group element is stored as the integer
matrix of its action on ``X_*``; points of ``V = X_* (x) R`` are tuples of
:class:`fractions.Fraction`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from ._linalg import Matrix, dot, identity, inverse, mat_mul, mat_vec

__all__ = [
    "RootDatum", "Root", "WeylElt", "RootDatumError",
    "build_root_datum", "preset", "preset_keys", "cartan_matrix",
    "weyl_reflect", "weyl_orbit", "dominant_rep", "dominance_leq",
    "conv_hull_contains", "conv_hull_contains_by_cones", "is_dominant",
    "dominant_cochars", "SUPPORTED_TYPES",
]

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]


class RootDatumError(ValueError):
    """Unsupported or inconsistent root datum."""


@dataclass(frozen=True)
class WeylElt:
    """A finite Weyl group element, as an integer automorphism of ``X_*``."""

    matrix: Matrix

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return WeylElt(mat_mul(self.matrix, other.matrix))

    def act(self, v: Sequence) -> tuple:
        return mat_vec(self.matrix, v)

    def inverse(self) -> "WeylElt":
        return WeylElt(_int_inverse(self.matrix))

    def is_identity(self) -> bool:
        return self.matrix == identity(len(self.matrix))


@lru_cache(maxsize=None)
def _int_inverse(m: Matrix) -> Matrix:
    inv = inverse(m)
    out = tuple(tuple(int(x) for x in row) for row in inv)
    if any(x.denominator != 1 for row in inv for x in row):
        raise RootDatumError("Weyl matrix is not unimodular")
    return out


@dataclass(frozen=True)
class Root:
    index: int
    coeffs: IntVec      # in the basis of simple roots
    co_coeffs: IntVec   # coroot in the basis of simple coroots
    vec: IntVec         # element of X^*
    covec: IntVec       # element of X_*

    @property
    def positive(self) -> bool:
        return sum(self.coeffs) > 0

    @property
    def height(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """A based reduced root datum ``(X^*, X_*, R, R^vee, Pi)``.

    ``cartan[i][j]`` is the pairing of the j-th simple root with the i-th
    simple coroot.  Instances compare and hash by identity; presets are
    interned by :func:`preset`.
    """

    name: str
    cartan: Matrix
    simple_roots: tuple[IntVec, ...]
    simple_coroots: tuple[IntVec, ...]
    coweight_basis: Optional[tuple[RatVec, ...]] = None
    roots: tuple[Root, ...] = field(init=False, repr=False)
    components: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    highest_roots: tuple[int, ...] = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        r = len(self.cartan)
        if len(self.simple_roots) != r or len(self.simple_coroots) != r:
            raise RootDatumError("need one simple root and coroot per Cartan row")
        n = len(self.simple_roots[0]) if r else 0
        if any(len(v) != n for v in self.simple_roots + self.simple_coroots):
            raise RootDatumError("inconsistent lattice dimension")
        for i in range(r):
            for j in range(r):
                if dot(self.simple_roots[j], self.simple_coroots[i]) != self.cartan[i][j]:
                    raise RootDatumError(
                        f"pairing <alpha_{j + 1}, alpha_{i + 1}^vee> does not match the Cartan matrix")
            if self.cartan[i][i] != 2:
                raise RootDatumError("Cartan diagonal must be 2")
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "roots", self._generate_roots())
        comps = _components(self.cartan)
        object.__setattr__(self, "components", comps)
        highest = []
        for comp in comps:
            cands = [rt for rt in self.positive_roots
                     if all(rt.coeffs[i] == 0 for i in range(r) if i not in comp)]
            highest.append(max(cands, key=lambda rt: rt.height).index)
        object.__setattr__(self, "highest_roots", tuple(highest))
        if self.coweight_basis is None:
            basis = tuple(self._coweight(j) for j in range(r))
            object.__setattr__(self, "coweight_basis", basis)

    # -- construction helpers -------------------------------------------------

    def _generate_roots(self) -> tuple[Root, ...]:
        r = self.rank
        c = self.cartan
        start = [(tuple(int(i == j) for j in range(r)),) * 2 for i in range(r)]
        seen = set(start)
        frontier = list(start)
        while frontier:
            nxt = []
            for coeffs, co in frontier:
                for i in range(r):
                    # s_i on the root and on its coroot
                    p = sum(coeffs[j] * c[i][j] for j in range(r))
                    q = sum(co[j] * c[j][i] for j in range(r))
                    new = (tuple(x - p * (k == i) for k, x in enumerate(coeffs)),
                           tuple(x - q * (k == i) for k, x in enumerate(co)))
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
            frontier = nxt
        for coeffs, _ in seen:
            if any(x < 0 for x in coeffs) and any(x > 0 for x in coeffs):
                raise RootDatumError("root with mixed-sign coefficients")
            if tuple(2 * x for x in coeffs) in {cf for cf, _ in seen}:
                raise RootDatumError("root system is not reduced")
        pos = sorted((p for p in seen if sum(p[0]) > 0),
                     key=lambda p: (sum(p[0]), tuple(-x for x in p[0])))
        ordered = pos + [(tuple(-x for x in a), tuple(-x for x in b)) for a, b in pos]
        out = []
        for idx, (coeffs, co) in enumerate(ordered):
            vec = tuple(sum(coeffs[i] * self.simple_roots[i][k] for i in range(r))
                        for k in range(self.dim))
            covec = tuple(sum(co[i] * self.simple_coroots[i][k] for i in range(r))
                          for k in range(self.dim))
            out.append(Root(idx, coeffs, co, vec, covec))
        return tuple(out)

    def _coweight(self, j: int) -> RatVec:
        """Fundamental coweight inside the span of the coroots."""
        target = tuple(Fraction(int(i == j)) for i in range(self.rank))
        coeffs = mat_vec(self._inv_cartan_t, target)
        return tuple(sum(coeffs[k] * self.simple_coroots[k][m] for k in range(self.rank))
                     for m in range(self.dim))

    # -- basic data -------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def dim(self) -> int:
        return len(self.simple_roots[0])

    @property
    def rank_X(self) -> int:
        return self.dim

    @property
    def positive_roots(self) -> tuple[Root, ...]:
        return self.roots[: len(self.roots) // 2]

    @property
    def n_pos(self) -> int:
        return len(self.roots) // 2

    def negate(self, idx: int) -> int:
        return (idx + self.n_pos) % len(self.roots)

    def pairing(self, chi: Sequence, v: Sequence):
        return dot(chi, v)

    @property
    def _inv_cartan_t(self):
        if "inv_ct" not in self._cache:
            ct = tuple(zip(*self.cartan))
            self._cache["inv_ct"] = inverse(ct)
        return self._cache["inv_ct"]

    @property
    def two_rho(self) -> IntVec:
        """Sum of positive roots, an element of ``X^*``."""
        if "two_rho" not in self._cache:
            self._cache["two_rho"] = tuple(sum(rt.vec[k] for rt in self.positive_roots)
                                           for k in range(self.dim))
        return self._cache["two_rho"]

    @property
    def two_rho_vee(self) -> IntVec:
        """Sum of positive coroots, an element of ``Q^vee``."""
        if "two_rho_vee" not in self._cache:
            self._cache["two_rho_vee"] = tuple(sum(rt.covec[k] for rt in self.positive_roots)
                                               for k in range(self.dim))
        return self._cache["two_rho_vee"]

    def root_by_covec(self, covec: Sequence) -> int:
        table = self._cache.get("by_covec")
        if table is None:
            table = {rt.covec: rt.index for rt in self.roots}
            self._cache["by_covec"] = table
        try:
            return table[tuple(covec)]
        except KeyError:
            raise RootDatumError(f"{tuple(covec)} is not a coroot") from None

    def coroot_coefficients(self, v: Sequence) -> Optional[RatVec]:
        """Coefficients of ``v`` in the simple coroots, or None if ``v`` is
        outside their span."""
        pairs = tuple(Fraction(dot(a, v)) for a in self.simple_roots)
        coeffs = mat_vec(self._inv_cartan_t, pairs)
        back = tuple(sum(coeffs[k] * self.simple_coroots[k][m] for k in range(self.rank))
                     for m in range(self.dim))
        if any(b != x for b, x in zip(back, v)):
            return None
        return coeffs

    def in_coroot_lattice(self, v: Sequence) -> bool:
        c = self.coroot_coefficients(v)
        return c is not None and all(x.denominator == 1 for x in c)

    # -- Weyl group ---------------------------------------------------------------

    def simple_reflection(self, i: int) -> WeylElt:
        return self.reflection(i)

    def reflection(self, root_index: int) -> WeylElt:
        key = ("refl", root_index)
        if key not in self._cache:
            rt = self.roots[root_index]
            n = self.dim
            m = tuple(tuple(int(a == b) - rt.covec[a] * rt.vec[b] for b in range(n))
                      for a in range(n))
            self._cache[key] = WeylElt(m)
        return self._cache[key]

    @property
    def identity(self) -> WeylElt:
        return WeylElt(identity(self.dim))

    def weyl_group(self) -> tuple[WeylElt, ...]:
        """All elements of ``W``, ordered by length then by reduced word."""
        if "W" not in self._cache:
            e = self.identity
            seen = {e: ()}
            frontier = [e]
            while frontier:
                nxt = []
                for w in frontier:
                    for i in range(self.rank):
                        v = w * self.simple_reflection(i)
                        if v not in seen:
                            seen[v] = seen[w] + (i,)
                            nxt.append(v)
                frontier = nxt
            self._cache["W"] = tuple(sorted(seen, key=lambda w: (len(seen[w]), seen[w])))
        return self._cache["W"]

    def is_positive_covec(self, v: Sequence) -> bool:
        return dot(self.two_rho, v) > 0

    def act_on_root(self, w: WeylElt, idx: int) -> int:
        return self.root_by_covec(w.act(self.roots[idx].covec))

    def inversions(self, w: WeylElt) -> frozenset[int]:
        """Positive roots ``alpha`` with ``w^{-1} alpha`` negative."""
        key = ("inv", w)
        out = self._cache.get(key)
        if out is None:
            winv = w.inverse()
            out = frozenset(rt.index for rt in self.positive_roots
                            if not self.is_positive_covec(winv.act(rt.covec)))
            self._cache[key] = out
        return out

    def weyl_length(self, w: WeylElt) -> int:
        return len(self.inversions(w))

    def weyl_word(self, w: WeylElt) -> tuple[int, ...]:
        """A reduced word ``(i_1, ..., i_k)`` with ``w = s_{i_1} ... s_{i_k}``."""
        key = ("word", w)
        if key not in self._cache:
            word = []
            cur = w
            while True:
                for i in range(self.rank):
                    if not self.is_positive_covec(cur.act(self.simple_coroots[i])):
                        cur = cur * self.simple_reflection(i)
                        word.append(i)
                        break
                else:
                    break
            self._cache[key] = tuple(reversed(word))
        return self._cache[key]

    def from_word(self, word: Iterable[int]) -> WeylElt:
        w = self.identity
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def longest_element(self) -> WeylElt:
        return max(self.weyl_group(), key=self.weyl_length)

    def __repr__(self) -> str:
        return f"RootDatum({self.name!r})"


def _components(cartan: Matrix) -> tuple[tuple[int, ...], ...]:
    r = len(cartan)
    left = set(range(r))
    comps = []
    while left:
        stack = [min(left)]
        comp = set()
        while stack:
            i = stack.pop()
            if i in comp:
                continue
            comp.add(i)
            stack.extend(j for j in range(r) if j not in comp and (cartan[i][j] or cartan[j][i]))
        left -= comp
        comps.append(tuple(sorted(comp)))
    return tuple(sorted(comps))


# -- presets ------------------------------------------------------------------------

SUPPORTED_TYPES = {"A": range(1, 6), "B": range(2, 6), "C": range(2, 6),
                   "D": range(2, 6), "G": (2,), "F": (4,)}
LATTICES = ("sc", "ad", "gl")
_KEY_RE = re.compile(r"^([A-Z])(\d+)(?:-(sc|ad|gl))?$")


def cartan_matrix(typ: str, rank: int) -> Matrix:
    """Cartan matrix in Bourbaki numbering, ``C[i][j] = <alpha_j, alpha_i^vee>``."""
    if typ not in SUPPORTED_TYPES or rank not in SUPPORTED_TYPES[typ]:
        raise RootDatumError(f"unsupported type {typ}{rank}")
    c = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]
    if typ in "ABC":
        for i in range(rank - 1):
            c[i][i + 1] = c[i + 1][i] = -1
        if typ == "B":
            c[rank - 1][rank - 2] = -2
        elif typ == "C":
            c[rank - 2][rank - 1] = -2
    elif typ == "D":
        if rank >= 3:
            for i in range(rank - 2):
                c[i][i + 1] = c[i + 1][i] = -1
            c[rank - 1][rank - 3] = c[rank - 3][rank - 1] = -1
    elif typ == "G":
        c[0][1], c[1][0] = -3, -1
    elif typ == "F":
        c[0][1] = c[1][0] = -1
        c[2][3] = c[3][2] = -1
        c[2][1], c[1][2] = -2, -1
    return tuple(tuple(row) for row in c)


def build_root_datum(typ: str, rank: int, lattice: str = "sc") -> RootDatum:
    """Preset root datum of the given Cartan type and cocharacter lattice.

    ``sc``: ``X_* = Q^vee``; ``ad``: ``X_*`` is the coweight lattice;
    ``gl`` (type A only): ``X_* = Z^{rank+1}`` as for ``GL_{rank+1}``.
    """
    cartan = cartan_matrix(typ, rank)
    name = f"{typ}{rank}-{lattice}"
    r = rank
    unit = lambda i, n: tuple(int(i == k) for k in range(n))  # noqa: E731
    if lattice == "sc":
        coroots = tuple(unit(i, r) for i in range(r))
        roots = tuple(tuple(cartan[i][j] for i in range(r)) for j in range(r))
        return RootDatum(name, cartan, roots, coroots)
    if lattice == "ad":
        roots = tuple(unit(j, r) for j in range(r))
        coroots = tuple(tuple(cartan[i][j] for j in range(r)) for i in range(r))
        return RootDatum(name, cartan, roots, coroots)
    if lattice == "gl":
        if typ != "A":
            raise RootDatumError("the gl lattice is only available for type A")
        n = r + 1
        vecs = tuple(tuple(unit(i, n)[k] - unit(i + 1, n)[k] for k in range(n)) for i in range(r))
        basis = tuple(tuple(Fraction(int(k <= j)) for k in range(n)) for j in range(r))
        return RootDatum(name, cartan, vecs, vecs, basis)
    raise RootDatumError(f"unknown lattice {lattice!r}")


@lru_cache(maxsize=None)
def preset(key: str) -> RootDatum:
    """Parse a preset key such as ``"A2-sc"``, ``"C2-ad"``, ``"A1-gl"``, ``"G2"``.

    A missing lattice suffix means ``sc``.
    """
    m = _KEY_RE.match(key.strip())
    if not m:
        raise RootDatumError(f"bad preset key {key!r}; expected e.g. 'A2-sc'")
    typ, rank, lattice = m.group(1), int(m.group(2)), m.group(3) or "sc"
    return build_root_datum(typ, rank, lattice)


def preset_keys() -> Iterator[str]:
    for typ, ranks in SUPPORTED_TYPES.items():
        for r in ranks:
            for lat in LATTICES:
                if lat != "gl" or typ == "A":
                    yield f"{typ}{r}-{lat}"


# -- operations -----------------------------------------------------------------------

def weyl_reflect(rd: RootDatum, alpha: int, v: Sequence) -> tuple:
    """``s_alpha(v) = v - <alpha, v> alpha^vee``."""
    if not 0 <= alpha < len(rd.roots):
        raise RootDatumError(f"no root with index {alpha}")
    rt = rd.roots[alpha]
    p = dot(rt.vec, v)
    return tuple(x - p * c for x, c in zip(v, rt.covec))


def weyl_orbit(rd: RootDatum, mu: Sequence) -> frozenset:
    """The orbit ``W mu``, by closure under simple reflections."""
    start = tuple(mu)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rd.rank):
                u = weyl_reflect(rd, i, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return frozenset(seen)


def is_dominant(rd: RootDatum, v: Sequence) -> bool:
    return all(dot(a, v) >= 0 for a in rd.simple_roots)


def dominant_rep(rd: RootDatum, v: Sequence) -> tuple[tuple, WeylElt]:
    """Return ``(v_plus, w)`` with ``v_plus = w(v)`` dominant."""
    cur = tuple(v)
    w = rd.identity
    while True:
        for i, a in enumerate(rd.simple_roots):
            if dot(a, cur) < 0:
                cur = weyl_reflect(rd, i, cur)
                w = rd.simple_reflection(i) * w
                break
        else:
            return cur, w


def _require_dominant(rd: RootDatum, *vs: Sequence) -> None:
    for v in vs:
        if not is_dominant(rd, v):
            raise RootDatumError(f"{tuple(v)} is not dominant")


def dominance_leq(rd: RootDatum, lam: Sequence, mu: Sequence) -> bool:
    """``lam <= mu`` in the dominance order on dominant cocharacters."""
    _require_dominant(rd, lam, mu)
    c = rd.coroot_coefficients(tuple(m - l for m, l in zip(mu, lam)))
    return c is not None and all(x.denominator == 1 and x >= 0 for x in c)


def _in_neg_cone(rd: RootDatum, diff: Sequence) -> bool:
    c = rd.coroot_coefficients(diff)
    return c is not None and all(x >= 0 for x in c)


def conv_hull_contains(rd: RootDatum, mu: Sequence, v: Sequence) -> bool:
    """Whether ``v`` lies in the convex hull of ``W mu`` (``mu`` dominant)."""
    _require_dominant(rd, mu)
    vplus, _ = dominant_rep(rd, v)
    return _in_neg_cone(rd, tuple(m - x for m, x in zip(mu, vplus)))


def conv_hull_contains_by_cones(rd: RootDatum, mu: Sequence, v: Sequence) -> bool:
    """Same as :func:`conv_hull_contains`, as an intersection of the
    translated cones ``w mu + w B_0`` over all ``w``."""
    _require_dominant(rd, mu)
    for w in rd.weyl_group():
        u = w.inverse().act(v)
        if not _in_neg_cone(rd, tuple(m - x for m, x in zip(mu, u))):
            return False
    return True


def dominant_cochars(rd: RootDatum, max_length: int) -> list[IntVec]:
    """Dominant ``mu`` in ``X_*`` with ``l(t_mu) = <2 rho, mu> <= max_length``,
    written as integral combinations of the coweight basis."""
    heights = [dot(rd.two_rho, w) for w in rd.coweight_basis]
    out = []

    def rec(i, acc, budget):
        if i == rd.rank:
            vec = tuple(sum(acc[j] * rd.coweight_basis[j][k] for j in range(rd.rank))
                        for k in range(rd.dim))
            if all(x.denominator == 1 for x in vec):
                out.append(tuple(int(x) for x in vec))
            return
        m = 0
        while m * heights[i] <= budget:
            rec(i + 1, acc + [m], budget - m * heights[i])
            m += 1

    rec(0, [], max_length)
    return sorted(out, key=lambda v: (dot(rd.two_rho, v), v))
