"""Extended affine Weyl group ``X_* x| W`` acting on alcoves.

The base alcove is the antidominant one, ``-1 < <alpha, x> < 0`` for all
positive roots.  Simple affine reflections (walls of the base alcove) are
labelled ``1..r`` for the simple roots and ``0`` for the affine wall of the
first irreducible component; further components get ``-1, -2, ...``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from ._linalg import dot
from .rootdatum import IntVec, RootDatum, RootDatumError, WeylElt

__all__ = [
    "ExtAffineElt", "AffineRoot", "Wall", "VertexInfo", "Alcove",
    "AffineWeylGroup", "ParahoricError", "reflect_affine",
]


class ParahoricError(ValueError):
    """Raised when an operation needs ``W_J`` finite and it is not."""


@dataclass(frozen=True)
class ExtAffineElt:
    """``t_lambda w``, acting on ``V`` by ``v -> lambda + w(v)``."""

    trans: IntVec
    fin: WeylElt

    def __mul__(self, other: "ExtAffineElt") -> "ExtAffineElt":
        return ExtAffineElt(
            tuple(a + b for a, b in zip(self.trans, self.fin.act(other.trans))),
            self.fin * other.fin)

    def inverse(self) -> "ExtAffineElt":
        winv = self.fin.inverse()
        return ExtAffineElt(tuple(-x for x in winv.act(self.trans)), winv)

    def act(self, v: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(self.trans, self.fin.act(v)))

    def to_json(self) -> dict:
        return {"trans": list(self.trans), "fin": [list(row) for row in self.fin.matrix]}

    @classmethod
    def from_json(cls, data: dict) -> "ExtAffineElt":
        try:
            trans = tuple(int(x) for x in data["trans"])
            fin = WeylElt(tuple(tuple(int(x) for x in row) for row in data["fin"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad element encoding: {data!r}") from exc
        if len(fin.matrix) != len(trans) or any(len(r) != len(trans) for r in fin.matrix):
            raise ValueError("element dimensions disagree")
        return cls(trans, fin)

    @classmethod
    def translation(cls, lam: Sequence[int]) -> "ExtAffineElt":
        n = len(lam)
        return cls(tuple(lam), WeylElt(tuple(tuple(int(i == j) for j in range(n)) for i in range(n))))

    def sort_key(self) -> tuple:
        return (self.trans, self.fin.matrix)


@dataclass(frozen=True)
class AffineRoot:
    """The affine function ``v -> <alpha, v> + k``; ``root`` indexes ``rd.roots``."""

    root: int
    k: int


def reflect_affine(rd: RootDatum, ar: AffineRoot, v: Sequence) -> tuple:
    """``s(x) = x - (<alpha, x> + k) alpha^vee``."""
    rt = rd.roots[ar.root]
    c = dot(rt.vec, v) + ar.k
    return tuple(x - c * y for x, y in zip(v, rt.covec))


@dataclass(frozen=True)
class Wall:
    label: int
    aroot: AffineRoot      # canonical: positive root
    gamma: IntVec          # linear part of the affine function positive on the base alcove
    const: int             # its constant term
    component: int


@dataclass(frozen=True)
class VertexInfo:
    point: tuple[Fraction, ...]
    types: frozenset[int]

    @property
    def type_index(self) -> int:
        if len(self.types) != 1:
            raise ValueError("vertex of a reducible alcove has several types")
        return next(iter(self.types))


@dataclass(frozen=True)
class Alcove:
    """An alcove, named by the unique ``u`` in ``W_aff`` with ``u(a) = alcove``."""

    elt: ExtAffineElt


class AffineWeylGroup:
    """Alcove geometry and group arithmetic for one root datum."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.n = rd.dim
        walls = []
        for ci, (comp, hi) in enumerate(zip(rd.components, rd.highest_roots)):
            theta = rd.roots[hi]
            walls.append(Wall(-ci, AffineRoot(hi, 1), theta.vec, 1, ci))
        for i in range(rd.rank):
            ci = next(c for c, comp in enumerate(rd.components) if i in comp)
            walls.append(Wall(i + 1, AffineRoot(i, 0),
                              tuple(-x for x in rd.simple_roots[i]), 0, ci))
        self.walls: dict[int, Wall] = {w.label: w for w in sorted(walls, key=lambda w: _label_order(w.label))}
        self.labels: tuple[int, ...] = tuple(self.walls)
        self.identity = ExtAffineElt.translation((0,) * self.n)
        self._simple = {lab: self._reflection_elt(w.aroot) for lab, w in self.walls.items()}
        self._vertices: Optional[tuple[VertexInfo, ...]] = None
        self._tau_cache: dict = {}
        self._parabolic_cache: dict = {}

    # -- elements -------------------------------------------------------------------

    def _reflection_elt(self, ar: AffineRoot) -> ExtAffineElt:
        rt = self.rd.roots[ar.root]
        return ExtAffineElt(tuple(-ar.k * c for c in rt.covec), self.rd.reflection(ar.root))

    def reflection(self, ar: AffineRoot) -> ExtAffineElt:
        return self._reflection_elt(ar)

    def s(self, label: int) -> ExtAffineElt:
        """The simple affine reflection with the given wall label."""
        try:
            return self._simple[label]
        except KeyError:
            raise ValueError(f"no wall labelled {label}; walls are {list(self.labels)}") from None

    def translation(self, lam: Sequence[int]) -> ExtAffineElt:
        if len(lam) != self.n:
            raise ValueError(f"cocharacter must have {self.n} coordinates")
        return ExtAffineElt.translation(tuple(int(x) for x in lam))

    def finite(self, w: WeylElt) -> ExtAffineElt:
        return ExtAffineElt((0,) * self.n, w)

    def from_word(self, word: Iterable[int], tau: Optional[ExtAffineElt] = None) -> ExtAffineElt:
        x = self.identity
        for lab in word:
            x = x * self.s(lab)
        return x * tau if tau is not None else x

    def lmul(self, label: int, x: ExtAffineElt) -> ExtAffineElt:
        """``s_label * x``."""
        ar = self.walls[label].aroot
        rt = self.rd.roots[ar.root]
        beta, cov = rt.vec, rt.covec
        c = dot(beta, x.trans) + ar.k
        trans = tuple(a - c * b for a, b in zip(x.trans, cov))
        m = x.fin.matrix
        row = [sum(beta[b] * m[b][col] for b in range(self.n)) for col in range(self.n)]
        fin = tuple(tuple(m[a][col] - cov[a] * row[col] for col in range(self.n))
                    for a in range(self.n))
        return ExtAffineElt(trans, WeylElt(fin))

    def rmul(self, x: ExtAffineElt, label: int) -> ExtAffineElt:
        """``x * s_label``."""
        ar = self.walls[label].aroot
        rt = self.rd.roots[ar.root]
        beta = rt.vec
        wcov = x.fin.act(rt.covec)
        trans = tuple(a - ar.k * b for a, b in zip(x.trans, wcov))
        m = x.fin.matrix
        fin = tuple(tuple(m[a][col] - wcov[a] * beta[col] for col in range(self.n))
                    for a in range(self.n))
        return ExtAffineElt(trans, WeylElt(fin))

    # -- length and descents ------------------------------------------------------

    def _interval_low(self, x: ExtAffineElt, root: int, inv: frozenset) -> int:
        """``A`` such that ``<alpha, x(a)>`` is the open interval ``(A, A+1)``."""
        m = dot(self.rd.roots[root].vec, x.trans)
        return m if root in inv else m - 1

    def length(self, x: ExtAffineElt) -> int:
        """Number of affine hyperplanes separating the base alcove from ``x(a)``."""
        inv = self.rd.inversions(x.fin)
        total = 0
        for rt in self.rd.positive_roots:
            m = dot(rt.vec, x.trans)
            a = m if rt.index in inv else m - 1
            if a >= 0:
                total += a + 1
            elif a <= -2:
                total += -a - 1
        return total

    def separates(self, ar: AffineRoot, x: ExtAffineElt) -> bool:
        """Whether ``H_{ar}`` separates the base alcove from ``x(a)``."""
        root, k = ar.root, ar.k
        if root >= self.rd.n_pos:
            root, k = self.rd.negate(root), -k
        a = self._interval_low(x, root, self.rd.inversions(x.fin))
        h = -k
        return (h >= 0 and a >= h) or (h <= -1 and a + 1 <= h)

    def is_left_descent(self, label: int, x: ExtAffineElt) -> bool:
        return self.separates(self.walls[label].aroot, x)

    def is_right_descent(self, x: ExtAffineElt, label: int) -> bool:
        return self.separates(self.walls[label].aroot, x.inverse())

    def left_descents(self, x: ExtAffineElt) -> list[int]:
        return [lab for lab in self.labels if self.is_left_descent(lab, x)]

    def right_descents(self, x: ExtAffineElt) -> list[int]:
        xi = x.inverse()
        return [lab for lab in self.labels if self.separates(self.walls[lab].aroot, xi)]

    def reduced_word(self, x: ExtAffineElt) -> tuple[tuple[int, ...], ExtAffineElt]:
        """``(word, tau)`` with ``x = s_{word[0]} ... s_{word[-1]} tau``, ``l(tau) = 0``."""
        word = []
        cur = x
        while True:
            for lab in self.labels:
                if self.is_left_descent(lab, cur):
                    cur = self.lmul(lab, cur)
                    word.append(lab)
                    break
            else:
                return tuple(word), cur

    # -- geometry -------------------------------------------------------------------

    def wall_value(self, label: int, v: Sequence) -> Fraction:
        w = self.walls[label]
        return dot(w.gamma, v) + w.const

    def base_alcove_walls(self) -> list[AffineRoot]:
        return [w.aroot for w in self.walls.values()]

    def vertices(self) -> tuple[VertexInfo, ...]:
        """Vertices of the closure of the base alcove, with their types."""
        if self._vertices is None:
            rd = self.rd
            per_comp = []
            for ci, (comp, hi) in enumerate(zip(rd.components, rd.highest_roots)):
                theta = rd.roots[hi]
                opts = [((Fraction(0),) * self.n, -ci)]
                for i in comp:
                    om = rd._coweight(i)
                    opts.append((tuple(-x / theta.coeffs[i] for x in om), i + 1))
                per_comp.append(opts)
            verts = []
            for choice in product(*per_comp):
                pt = tuple(sum(p[k] for p, _ in choice) for k in range(self.n))
                verts.append(VertexInfo(pt, frozenset(t for _, t in choice)))
            for v in verts:
                for lab in self.labels:
                    val = self.wall_value(lab, v.point)
                    if val < 0 or (val == 0) == (lab in v.types):
                        raise RootDatumError("singular wall system for the base alcove")
            self._vertices = tuple(sorted(verts, key=lambda v: sorted(_label_order(t) for t in v.types)))
        return self._vertices

    def barycenter(self) -> tuple[Fraction, ...]:
        vs = self.vertices()
        return tuple(sum(v.point[k] for v in vs) / len(vs) for k in range(self.n))

    def in_base_alcove(self, v: Sequence) -> bool:
        return all(self.wall_value(lab, v) > 0 for lab in self.labels)

    def check_J(self, J: Iterable[int]) -> frozenset[int]:
        J = frozenset(J)
        bad = J - set(self.labels)
        if bad:
            raise ValueError(f"unknown wall labels {sorted(bad)}; walls are {list(self.labels)}")
        return J

    def is_finite_J(self, J: Iterable[int]) -> bool:
        J = self.check_J(J)
        for ci in range(len(self.rd.components)):
            comp_walls = {w.label for w in self.walls.values() if w.component == ci}
            if comp_walls <= J:
                return False
        return True

    def require_finite_J(self, J: Iterable[int]) -> frozenset[int]:
        J = self.check_J(J)
        if not self.is_finite_J(J):
            raise ParahoricError(f"W_J is infinite for J = {sorted(J)}")
        return J

    def facet_vertices(self, J: Iterable[int]) -> tuple[VertexInfo, ...]:
        """Vertices of the base alcove fixed by ``W_J`` (type not in ``J``)."""
        J = self.require_finite_J(J)
        return tuple(v for v in self.vertices() if not (v.types & J))

    def proper_finite_subsets(self) -> list[frozenset[int]]:
        """All ``J`` with ``W_J`` finite, ordered by size then labels."""
        out = []
        labs = list(self.labels)
        for mask in range(1 << len(labs)):
            J = frozenset(labs[i] for i in range(len(labs)) if mask >> i & 1)
            if self.is_finite_J(J):
                out.append(J)
        return sorted(out, key=lambda J: (len(J), sorted(_label_order(t) for t in J)))

    def parabolic_elements(self, J: Iterable[int]) -> frozenset[ExtAffineElt]:
        """The finite group ``W_J``."""
        J = self.require_finite_J(J)
        if J not in self._parabolic_cache:
            seen = {self.identity}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for x in frontier:
                    for lab in J:
                        y = self.rmul(x, lab)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            self._parabolic_cache[J] = frozenset(seen)
        return self._parabolic_cache[J]

    def in_parabolic(self, x: ExtAffineElt, J: Iterable[int]) -> bool:
        word, tau = self.reduced_word(x)
        return tau == self.identity and set(word) <= set(J)

    # -- galleries and the Omega decomposition ---------------------------------------

    def gallery_walk(self, target) -> list[AffineRoot]:
        """Hyperplanes crossed by a minimal gallery from the base alcove to
        ``target`` (an :class:`Alcove` or any element ``x``, meaning ``x(a)``).

        Works with a generic point of the target alcove only, so it is
        independent of :meth:`length`.
        """
        return self._walk(target.elt if isinstance(target, Alcove) else target)[0]

    def _walk(self, x: ExtAffineElt) -> tuple[list[AffineRoot], tuple[int, ...]]:
        p = x.act(self.barycenter())
        u = self.identity
        crossed, word = [], []
        while True:
            for lab in self.labels:
                if self.wall_value(lab, p) < 0:
                    crossed.append(self.transform_root(u, self.walls[lab].aroot))
                    word.append(lab)
                    p = reflect_affine(self.rd, self.walls[lab].aroot, p)
                    u = self.rmul(u, lab)
                    break
            else:
                return crossed, tuple(word)

    def transform_root(self, y: ExtAffineElt, ar: AffineRoot) -> AffineRoot:
        """The affine root whose hyperplane is ``y(H_ar)``, canonicalised."""
        rd = self.rd
        idx = rd.act_on_root(y.fin, ar.root)
        k = ar.k - dot(rd.roots[idx].vec, y.trans)
        return self.canonical(AffineRoot(idx, k))

    def canonical(self, ar: AffineRoot) -> AffineRoot:
        if ar.root >= self.rd.n_pos:
            return AffineRoot(self.rd.negate(ar.root), -ar.k)
        return ar

    def omega_decompose(self, x: ExtAffineElt) -> tuple[ExtAffineElt, ExtAffineElt]:
        """``x = u tau`` with ``u`` in ``W_aff`` and ``tau(a) = a``."""
        _, word = self._walk(x)
        u = self.from_word(word)
        tau = u.inverse() * x
        if self.length(tau) != 0:
            raise RuntimeError("Omega decomposition failed: tau has positive length")
        return u, tau

    def tau(self, x: ExtAffineElt) -> ExtAffineElt:
        """The Omega-component of ``x``, computed from ``x(0)`` modulo ``Q^vee``."""
        return self.omega_decompose(x)[1]

    def tau_of_cochar(self, mu: Sequence[int]) -> ExtAffineElt:
        mu = tuple(mu)
        if mu not in self._tau_cache:
            self._tau_cache[mu] = self.omega_decompose(self.translation(mu))[1]
        return self._tau_cache[mu]

    def alcove(self, x: ExtAffineElt) -> Alcove:
        return Alcove(self.omega_decompose(x)[0])

    def same_coset(self, x: ExtAffineElt, mu: Sequence[int]) -> bool:
        """Whether ``x`` lies in ``W_aff tau_mu``."""
        return self.rd.in_coroot_lattice(tuple(a - b for a, b in zip(x.trans, mu)))

    def point_orbit_rep(self, v: Sequence) -> tuple:
        """Representative in the closed base alcove of the ``W_aff``-orbit of ``v``."""
        p = tuple(Fraction(x) for x in v)
        while True:
            for lab in self.labels:
                if self.wall_value(lab, p) < 0:
                    p = reflect_affine(self.rd, self.walls[lab].aroot, p)
                    break
            else:
                return p

    def alcove_vertices(self, x: ExtAffineElt) -> list[tuple]:
        return [x.act(v.point) for v in self.vertices()]

    def label_name(self, label: int) -> str:
        if label > 0:
            return str(label)
        return "0" + "'" * (-label)


def _label_order(label: int) -> tuple[int, int]:
    return (0, -label) if label <= 0 else (1, label)
