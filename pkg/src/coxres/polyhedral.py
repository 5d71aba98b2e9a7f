"""Rational polyhedral cones and fans.

Cones keep both descriptions: extreme rays plus a lineality basis, and facet
inner normals plus equations of the linear span.  Conversion is exact double
description.  Fans are lists of maximal cones; rays are shared through a
sorted ray pool.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import _dd
from .lattice import hermite_normal_form, smith_normal_form

__all__ = [
    "Cone",
    "Fan",
    "dualize",
    "intersect_fans",
    "is_regular",
    "is_simplicial",
    "stellar_subdivide",
    "resolve_fan",
    "parallelepiped_points",
    "SubdivisionStrategy",
    "triangulate",
]


def _hnf_rows(rows) -> tuple:
    if not rows:
        return ()
    h, _ = hermite_normal_form([list(r) for r in rows])
    return tuple(tuple(r) for r in h if any(r))


def _project_out(v, basis) -> tuple:
    """Orthogonal projection of v onto the complement of span(basis), made integral."""
    if not basis:
        return tuple(v)
    # Gram-Schmidt over Q
    ortho: list[list[Fraction]] = []
    for b in basis:
        w = [Fraction(x) for x in b]
        for o in ortho:
            c = sum(x * y for x, y in zip(w, o)) / sum(y * y for y in o)
            w = [x - c * y for x, y in zip(w, o)]
        if any(w):
            ortho.append(w)
    w = [Fraction(x) for x in v]
    for o in ortho:
        c = sum(x * y for x, y in zip(w, o)) / sum(y * y for y in o)
        w = [x - c * y for x, y in zip(w, o)]
    if not any(w):
        return tuple(0 for _ in v)
    return _dd.integer_vector(w)


class Cone:
    """A rational polyhedral cone in Q^d.

    Construct from generators (``Cone(rays, lineality)``) or from an
    H-description (``Cone.from_inequalities``).  Stored rays are extreme,
    primitive and, when the cone has lineality, projected orthogonally to it.
    """

    def __init__(self, rays: Iterable[Sequence[int]] = (), lineality: Iterable[Sequence[int]] = (), dim: int | None = None):
        rays = [tuple(int(x) for x in r) for r in rays]
        lineality = [tuple(int(x) for x in l) for l in lineality]
        if dim is None:
            if rays:
                dim = len(rays[0])
            elif lineality:
                dim = len(lineality[0])
            else:
                raise ValueError("ambient dimension required for the zero cone")
        self.ambient_dim = dim
        facets, eqs = _dd.v_to_h(rays, dim, lineality)
        self._set_h(facets, eqs)

    @classmethod
    def from_inequalities(cls, inequalities, equations=(), dim: int | None = None) -> "Cone":
        inequalities = [tuple(int(x) for x in a) for a in inequalities]
        equations = [tuple(int(x) for x in b) for b in equations]
        if dim is None:
            dim = len((inequalities or equations)[0])
        obj = object.__new__(cls)
        obj.ambient_dim = dim
        rays, lin = _dd.h_to_v(inequalities, equations, dim)
        # canonical H-description from the V-description
        facets, eqs = _dd.v_to_h(rays, dim, lin)
        obj._set_h(facets, eqs)
        return obj

    def _set_h(self, facets, eqs):
        d = self.ambient_dim
        eq_basis = _hnf_rows(eqs)
        # facets projected into the span of the cone are canonical
        fac = sorted({_project_out(f, eq_basis) for f in facets} - {tuple([0] * d)})
        self.equations = eq_basis
        self.facets = tuple(fac)
        rays, lin = _dd.h_to_v(list(self.facets), list(self.equations), d)
        lin_basis = _hnf_rows(lin)
        self.lineality = lin_basis
        self.rays = tuple(sorted({_project_out(r, lin_basis) for r in rays} - {tuple([0] * d)}))

    # -- basic data -----------------------------------------------------------
    def __repr__(self) -> str:
        s = f"Cone(rays={list(self.rays)}"
        if self.lineality:
            s += f", lineality={list(self.lineality)}"
        return s + ")"

    def _key(self):
        return (self.ambient_dim, self.rays, self.lineality)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cone) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, v: Sequence) -> bool:
        v = [Fraction(x) for x in v]
        return all(sum(a * b for a, b in zip(f, v)) >= 0 for f in self.facets) and all(
            sum(a * b for a, b in zip(e, v)) == 0 for e in self.equations
        )

    __contains__ = contains

    def contains_in_relative_interior(self, v: Sequence) -> bool:
        v = [Fraction(x) for x in v]
        return all(sum(a * b for a, b in zip(f, v)) > 0 for f in self.facets) and all(
            sum(a * b for a, b in zip(e, v)) == 0 for e in self.equations
        )

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays) and all(
            self.contains(l) and self.contains([-x for x in l]) for l in other.lineality
        )

    def relative_interior_point(self) -> tuple:
        """Sum of the rays (integer, primitive); interior of the pointed part."""
        if not self.rays:
            return tuple([0] * self.ambient_dim)
        s = [sum(r[i] for r in self.rays) for i in range(self.ambient_dim)]
        return _dd.primitive(tuple(s))

    # -- operations ---------------------------------------------------------------
    def dual(self) -> "Cone":
        """{u : u.x >= 0 for all x in the cone}."""
        return Cone(self.facets, self.equations, self.ambient_dim)

    def intersect(self, other: "Cone") -> "Cone":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return Cone.from_inequalities(
            list(self.facets) + list(other.facets),
            list(self.equations) + list(other.equations),
            self.ambient_dim,
        )

    def linear_image(self, m: Sequence[Sequence]) -> "Cone":
        """Image under x -> M x (M given as rows)."""
        def app(v):
            w = [sum(Fraction(a) * b for a, b in zip(row, v)) for row in m]
            return _dd.integer_vector(w) if any(w) else tuple(0 for _ in w)

        rays = [app(r) for r in self.rays]
        lin = [app(l) for l in self.lineality]
        dim = len(m)
        return Cone([r for r in rays if any(r)], [l for l in lin if any(l)], dim)

    def faces(self) -> list["Cone"]:
        """All faces (including the cone itself and the minimal face)."""
        rays = self.rays
        inc = []
        for f in self.facets:
            inc.append(frozenset(i for i, r in enumerate(rays) if _dd.dot(f, r) == 0))
        sets = {frozenset(range(len(rays)))}
        frontier = list(sets)
        while frontier:
            new = []
            for s in frontier:
                for fi in inc:
                    t = s & fi
                    if t != s and t not in sets:
                        sets.add(t)
                        new.append(t)
            frontier = new
        out = []
        for s in sets:
            out.append(Cone([rays[i] for i in sorted(s)], self.lineality, self.ambient_dim))
        uniq = {}
        for c in out:
            uniq.setdefault(c._key(), c)
        return sorted(uniq.values(), key=lambda c: (c.dim, c.rays))

    def facet_cones(self) -> list["Cone"]:
        out = []
        for f in self.facets:
            rs = [r for r in self.rays if _dd.dot(f, r) == 0]
            out.append(Cone(rs, self.lineality, self.ambient_dim))
        return out

    def quotient_rays(self) -> tuple:
        return self.rays

    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim - self.lineality_dim

    def multiplicity(self) -> int:
        """Index of the ray lattice in the saturated lattice of the span (simplicial cones)."""
        if not self.is_simplicial():
            raise ValueError("multiplicity is defined here for simplicial cones")
        if not self.rays:
            return 1
        basis = _quotient_coordinates(self)
        d, _, _ = smith_normal_form([list(r) for r in basis])
        m = 1
        for i in range(len(basis)):
            m *= abs(d[i][i])
        return m

    def is_regular(self) -> bool:
        return self.is_simplicial() and self.multiplicity() == 1


def _quotient_coordinates(c: Cone) -> list[tuple]:
    """Ray coordinates modulo the lineality lattice (integral quotient map)."""
    if not c.lineality:
        return list(c.rays)
    # complete the lineality basis: use SNF to get a unimodular change of basis
    d, u, v = smith_normal_form([list(l) for l in c.lineality])
    # columns of v: first k span the saturation of the lineality lattice (after
    # scaling); coordinates x -> x * v, drop the first k coordinates
    k = len(c.lineality)
    out = []
    for r in c.rays:
        y = [sum(r[i] * v[i][j] for i in range(len(r))) for j in range(len(r))]
        out.append(tuple(y[k:]))
    return out


def dualize(c: Cone) -> Cone:
    return c.dual()


def is_simplicial(c: Cone) -> bool:
    return c.is_simplicial()


def is_regular(c: Cone) -> bool:
    return c.is_regular()


def parallelepiped_points(c: Cone) -> list[tuple[tuple, tuple]]:
    """Lattice points sum(lambda_i r_i) with 0 <= lambda_i < 1, as (point, lambdas).

    For a simplicial pointed cone; the origin is included.
    """
    if not c.is_simplicial() or c.lineality:
        raise ValueError("need a pointed simplicial cone")
    rays = list(c.rays)
    k = len(rays)
    if k == 0:
        return [(tuple([0] * c.ambient_dim), ())]
    d, u, _ = smith_normal_form([list(r) for r in rays])
    diag = [d[i][i] for i in range(k)]
    out = set()
    for a in itertools.product(*[range(x) for x in diag]):
        mu = [Fraction(ai, di) for ai, di in zip(a, diag)]
        lam = [sum(mu[i] * u[i][j] for i in range(k)) for j in range(k)]
        lam = tuple(x - (x.numerator // x.denominator) for x in lam)
        pt = tuple(int(sum(lam[j] * rays[j][t] for j in range(k))) for t in range(c.ambient_dim))
        out.add((pt, lam))
    return sorted(out)


# ---------------------------------------------------------------------------
# fans


class Fan:
    """A fan given by its maximal cones (all in the same ambient space)."""

    def __init__(self, cones: Iterable[Cone], dim: int | None = None, check: bool = False):
        cones = list(cones)
        if dim is None:
            if not cones:
                raise ValueError("ambient dimension required for the empty fan")
            dim = cones[0].ambient_dim
        self.ambient_dim = dim
        uniq = {}
        for c in cones:
            if c.ambient_dim != dim:
                raise ValueError("cones live in different ambient spaces")
            uniq.setdefault(c._key(), c)
        cs = list(uniq.values())
        maximal = [c for c in cs if not any(o is not c and o.contains_cone(c) and o != c for o in cs)]
        self.cones = tuple(sorted(maximal, key=lambda c: (-c.dim, c.rays, c.lineality)))
        if check:
            self.validate()

    @classmethod
    def from_cone(cls, c: Cone) -> "Fan":
        """The fan of all faces of c."""
        return cls([c])

    @classmethod
    def from_rays(cls, rays: Sequence[Sequence[int]], cones: Iterable[Iterable[int]], dim: int | None = None) -> "Fan":
        rays = [tuple(r) for r in rays]
        dim = dim or len(rays[0])
        return cls([Cone([rays[i] for i in s], (), dim) for s in cones], dim)

    def __repr__(self) -> str:
        return f"Fan(rays={list(self.rays)}, cones={self.maximal_cones})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Fan) and set(c._key() for c in self.cones) == set(c._key() for c in other.cones)

    def __hash__(self) -> int:
        return hash(frozenset(c._key() for c in self.cones))

    @cached_property
    def rays(self) -> tuple:
        return tuple(sorted({r for c in self.cones for r in c.rays}))

    @property
    def maximal_cones(self) -> list[tuple]:
        idx = {r: i for i, r in enumerate(self.rays)}
        return [tuple(sorted(idx[r] for r in c.rays)) for c in self.cones]

    @property
    def lineality(self) -> tuple:
        return self.cones[0].lineality if self.cones else ()

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cones), default=-1)

    def all_cones(self) -> list[Cone]:
        seen = {}
        for c in self.cones:
            for f in c.faces():
                seen.setdefault(f._key(), f)
        return sorted(seen.values(), key=lambda c: (c.dim, c.rays))

    def contains(self, v) -> bool:
        return any(c.contains(v) for c in self.cones)

    __contains__ = contains

    def is_regular(self) -> bool:
        return all(c.is_regular() for c in self.cones)

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.cones)

    def validate(self) -> None:
        """Raise if two maximal cones meet outside a common face."""
        for a, b in itertools.combinations(self.cones, 2):
            inter = a.intersect(b)
            fa = {f._key() for f in a.faces()}
            fb = {f._key() for f in b.faces()}
            if inter._key() not in fa or inter._key() not in fb:
                raise ValueError(f"cones {a} and {b} do not meet in a common face")

    def to_dict(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "cones": [list(c) for c in self.maximal_cones],
            "lineality": [list(l) for l in self.lineality],
        }


def intersect_fans(a: Fan, b: Fan) -> Fan:
    """Fan of pairwise intersections of maximal cones (non-maximal ones dropped)."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    cones = [x.intersect(y) for x in a.cones for y in b.cones]
    return Fan(cones, a.ambient_dim)


def stellar_subdivide(f: Fan, v: Sequence[int]) -> Fan:
    """Star subdivision of f at the ray through v."""
    v = _dd.primitive(tuple(int(x) for x in v))
    if not f.contains(v):
        raise ValueError(f"{v} is not in the support of the fan")
    if v in f.rays:
        return f
    out = []
    for c in f.cones:
        if not c.contains(v):
            out.append(c)
            continue
        for facet in c.facet_cones():
            if facet.contains(v):
                continue
            out.append(Cone(list(facet.rays) + [v], c.lineality, f.ambient_dim))
        if not c.facets:  # a full linear space or a ray-free cone
            out.append(c)
    return Fan(out, f.ambient_dim)


def triangulate(f: Fan) -> Fan:
    """Pulling triangulation: each non-simplicial cone pulled at its lexicographically first ray.

    Shared faces are triangulated consistently because every face is pulled
    at its own first ray, and the first ray of a cone is the first ray of any
    face containing it.
    """
    if f.is_simplicial():
        return f
    # global pulling order: rays in lexicographic order
    order = {r: i for i, r in enumerate(f.rays)}
    out = []
    for c in f.cones:
        out.extend(_pull(c, order))
    return Fan(out, f.ambient_dim)


def _pull(c: Cone, order) -> list[Cone]:
    if c.is_simplicial():
        return [c]
    apex = min(c.rays, key=lambda r: order.get(r, len(order)))
    out = []
    for facet in c.facet_cones():
        if apex in facet.rays:
            continue
        for simplex in _pull(facet, order):
            out.append(Cone(list(simplex.rays) + [apex], c.lineality, c.ambient_dim))
    return out


class SubdivisionStrategy:
    """Pinned rule for choosing the next subdivision point.

    Among non-regular cones, take one of maximal multiplicity (ties: the
    smallest sorted ray list); inside it take the nonzero parallelepiped point
    minimizing the sum of its coordinates in the ray basis, ties broken by
    the lexicographically smallest point.
    """

    name = "max-multiplicity/min-height/lex"

    @staticmethod
    def pick(fan: Fan):
        worst = None
        for c in fan.cones:
            if c.is_regular():
                continue
            m = c.multiplicity()
            if worst is None or m > worst[0] or (m == worst[0] and c.rays < worst[1].rays):
                worst = (m, c)
        if worst is None:
            return None
        c = worst[1]
        pts = [(sum(lam), pt) for pt, lam in parallelepiped_points(c) if any(pt)]
        pts.sort()
        return pts[0][1]


def resolve_fan(f: Fan, strategy=SubdivisionStrategy, max_steps: int = 1000) -> tuple[Fan, list[tuple]]:
    """Regular refinement: triangulate, then star-subdivide until regular.

    Returns the regular fan and the inserted rays in insertion order.
    """
    if f.lineality:
        raise ValueError("quotient out the lineality space before resolving")
    fan = triangulate(f)
    inserted: list[tuple] = []
    for _ in range(max_steps):
        v = strategy.pick(fan)
        if v is None:
            return fan, inserted
        v = _dd.primitive(v)
        fan = stellar_subdivide(fan, v)
        inserted.append(v)
    raise RuntimeError("resolution did not finish within the step limit")
