"""Tropical hypersurfaces, prevarieties and exact ray membership.

The default is the max convention: ``Trop(f)`` is the set of weights ``w`` for
which the maximum of ``<w, e>`` over the exponents ``e`` of ``f`` is attained at
least twice, i.e. the codimension-one skeleton of the outer normal fan of the
Newton polytope. ``convention="min"`` negates everything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .groebner import Ideal, contains_monomial, initial_form_ideal
from .lattice import rational_inverse
from .polyhedral import Cone, Fan, intersect_fans
from .polynomials import LatticePolytope, MultiPolynomial

__all__ = [
    "TropicalFan",
    "tropical_hypersurface",
    "tropical_prevariety",
    "ray_in_tropical",
    "project_tropical",
    "edge_normal_cones",
]

_CONVENTIONS = ("max", "min")


def _check_convention(convention: str) -> None:
    if convention not in _CONVENTIONS:
        raise ValueError(f"convention must be one of {_CONVENTIONS}, not {convention!r}")


@dataclass
class TropicalFan:
    """A fan together with how it was obtained.

    ``provenance`` is one of ``"hypersurface"``, ``"prevariety"`` or ``"projected"``;
    ``exact`` is False when the support may strictly contain the tropical variety.
    """

    fan: Fan
    provenance: str
    convention: str = "max"
    exact: bool = True
    sources: list = field(default_factory=list)
    pruned: list = field(default_factory=list)

    @property
    def cones(self) -> list:
        return self.fan.cones

    @property
    def rays(self) -> tuple:
        return self.fan.rays

    @property
    def ambient_dim(self) -> int:
        return self.fan.ambient_dim

    def is_empty(self) -> bool:
        return not self.fan.cones

    def contains(self, w: Sequence) -> bool:
        return any(c.contains(w) for c in self.fan.cones)


def _neg(v):
    return tuple(-x for x in v)


def edge_normal_cones(points: Sequence[Sequence[int]], dim: int) -> list[Cone]:
    """Outer normal cones of the edges of conv(points).

    For vertices ``a, b`` the cone ``{w : <w,a> = <w,b> >= <w,c>}`` has dimension
    ``dim - 1`` exactly when ``[a, b]`` is an edge.
    """
    verts = LatticePolytope.from_points(points).vertices
    out = []
    for a, b in combinations(verts, 2):
        eq = [x - y for x, y in zip(a, b)]
        ineqs = [[x - y for x, y in zip(a, c)] for c in verts if c != a and c != b]
        cone = Cone.from_inequalities(ineqs, [eq], dim)
        if cone.dim == dim - 1:
            out.append(cone)
    return out


def tropical_hypersurface(f: MultiPolynomial, convention: str = "max") -> TropicalFan:
    """Codimension-one skeleton of the normal fan of the Newton polytope of ``f``."""
    _check_convention(convention)
    n = f.ring.nvars
    if f.is_zero():
        raise ValueError("the zero polynomial has no tropical hypersurface")
    pts = f.support()
    if len(pts) < 2:
        return TropicalFan(Fan([], n), "hypersurface", convention, True, [f])
    cones = edge_normal_cones(pts, n)
    if convention == "min":
        cones = [Cone([_neg(r) for r in c.rays], c.lineality, n) for c in cones]
    return TropicalFan(Fan(cones, n), "hypersurface", convention, True, [f])


def tropical_prevariety(gens: Sequence[MultiPolynomial], convention: str = "max") -> TropicalFan:
    """Common refinement of the hypersurfaces of the given generators.

    Exact for a single generator; otherwise a superset of the tropical variety
    of the ideal they generate (``exact`` is False).
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    fans = [tropical_hypersurface(g, convention) for g in gens]
    acc = fans[0].fan
    for t in fans[1:]:
        if not acc.cones:
            break
        acc = intersect_fans(acc, t.fan)
    return TropicalFan(acc, "prevariety" if len(gens) > 1 else "hypersurface", convention, len(gens) == 1, list(gens))


def ray_in_tropical(I: Ideal, w: Sequence, convention: str = "max") -> bool:
    """True iff the initial ideal of I at w contains no monomial."""
    _check_convention(convention)
    w = [Fraction(x) for x in w]
    if convention == "min":
        w = [-x for x in w]
    return not contains_monomial(initial_form_ideal(I, w))


def project_tropical(p0: Sequence[Sequence[int]], t: TropicalFan) -> TropicalFan:
    """Image of the fan under ``w -> P0 w`` (P0 given as rows, square, invertible)."""
    rational_inverse(p0)  # raises on a singular matrix
    n = len(p0)
    cones = [c.linear_image(p0) for c in t.fan.cones]
    return TropicalFan(Fan(cones, n), "projected", t.convention, t.exact, list(t.sources))

