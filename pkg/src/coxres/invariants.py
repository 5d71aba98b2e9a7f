"""Invariant rings of finite matrix groups and their character-homogeneous generators.

A matrix h acts on polynomials by substitution, ``(f o h)(S) = f(h S)``.
Polynomials live in ``S1..Sn`` over a cyclotomic field holding the group entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from ._linalg import EchelonBasis, nullspace
from .cyclotomic import as_scalar, lcm, root_of_unity
from .groups import MatrixGroup
from .lattice import AbelianGroupSpec
from .polynomials import MonomialOrder, MultiPolynomial, PolyRing

__all__ = [
    "GradedGeneratorSet",
    "InvariantError",
    "s_ring",
    "act",
    "reynolds",
    "invariant_space_basis",
    "minimal_generators",
    "gprime_homogenize",
    "characters_of",
    "graded_generator_set",
]

_ORDER = MonomialOrder.degrevlex()


class InvariantError(ArithmeticError):
    """Internal-consistency failure (for instance non-commuting induced actions)."""


def s_ring(group: MatrixGroup, *groups: MatrixGroup) -> PolyRing:
    """Polynomial ring in S1..Sn over a field holding the entries of all groups."""
    order = group.entry_field_order
    for g in groups:
        order = lcm(order, g.entry_field_order)
    n = group.degree
    return PolyRing(n, order, names=[f"S{i + 1}" for i in range(n)])


def _linear_images(ring: PolyRing, h) -> list[MultiPolynomial]:
    n = ring.nvars
    out = []
    for i in range(n):
        terms = {}
        for j in range(n):
            c = as_scalar(h[i][j])
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = c
        out.append(MultiPolynomial(ring, terms))
    return out


def act(f: MultiPolynomial, h) -> MultiPolynomial:
    """``f o h``: substitute ``S_i -> sum_j h[i][j] S_j``."""
    return f.compose(_linear_images(f.ring, h), f.ring)


def reynolds(f: MultiPolynomial, group: MatrixGroup) -> MultiPolynomial:
    """Group average of ``f``; an invariant, and the identity on invariants."""
    acc = f.ring.zero()
    for h in group.elements:
        acc = acc + act(f, h)
    return acc * Fraction(1, group.order)


def _monomials(n: int, d: int):
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _poly(ring: PolyRing, vec: dict) -> MultiPolynomial:
    return MultiPolynomial(ring, dict(vec))


def invariant_space_basis(group: MatrixGroup, d: int, ring: PolyRing | None = None) -> list[MultiPolynomial]:
    """Echelon basis of the degree-``d`` invariants, largest leading monomial first.

    Reynolds images of all degree-``d`` monomials, reduced to a canonical
    basis in which every element is monic with a distinct leading monomial.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    ring = ring or s_ring(group)
    ech = EchelonBasis(_ORDER.key)
    for e in _monomials(ring.nvars, d):
        ech.add(reynolds(ring.monomial(e), group).terms)
    return [_poly(ring, v) for v in ech.basis()]


def _products(gens_by_degree: dict, d: int):
    """All products of chosen generators with total degree exactly ``d``."""
    flat = [(deg, g) for deg in sorted(gens_by_degree) for g in gens_by_degree[deg]]

    def rec(start, remaining, acc):
        if remaining == 0:
            yield acc
            return
        for k in range(start, len(flat)):
            deg, g = flat[k]
            if deg <= remaining:
                yield from rec(k, remaining - deg, g if acc is None else acc * g)

    for p in rec(0, d, None):
        if p is not None:
            yield p


def minimal_generators(group: MatrixGroup, ring: PolyRing | None = None, max_degree: int | None = None) -> list[MultiPolynomial]:
    """Minimal homogeneous generators of the invariant ring, by increasing degree.

    Runs up to the Noether bound ``|group|`` (or ``max_degree``). At each degree
    the span of products of lower-degree generators is removed and a basis of a
    complement is adjoined.
    """
    ring = ring or s_ring(group)
    bound = group.order if max_degree is None else max_degree
    chosen: dict[int, list] = {}
    out = []
    for d in range(1, bound + 1):
        inv = invariant_space_basis(group, d, ring)
        if not inv:
            continue
        span = EchelonBasis(_ORDER.key)
        for p in _products(chosen, d):
            span.add(p.terms)
            if len(span) == len(inv):
                break
        new = []
        for b in inv:
            if span.add(b.terms) is not None:
                new.append(b)
        if new:
            chosen[d] = new
            out.extend(new)
    return out


@dataclass
class GradedGeneratorSet:
    """Character-homogeneous invariant generators together with their degrees.

    ``degrees[i]`` is the class of generator i in ``spec`` (the abelianization
    of G, identified with its character group); ``characters[i]`` holds the
    eigenvalue exponents ``a`` with ``g_i o m_j = zeta_e^a g_i`` for the group
    generators ``m_j`` and ``e`` the exponent of G.
    """

    generators: list
    degrees: list
    spec: AbelianGroupSpec
    characters: list = field(default_factory=list)
    exponent: int = 1
    per_degree_bases: dict = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.generators[0].ring

    def q0(self) -> list[list[int]]:
        """Degree matrix: one row per cyclic factor, one column per generator."""
        k = len(self.spec.torsion)
        return [[deg[r] for deg in self.degrees] for r in range(k)]

    @property
    def moduli(self) -> tuple:
        return self.spec.torsion


def _eigen_scalar(f: MultiPolynomial, image: MultiPolynomial):
    """lambda with image == lambda * f, else None."""
    lm = f.leading_monomial(_ORDER)
    lam = as_scalar(image.coefficient(lm) / f.leading_coeff(_ORDER))
    return lam if image == f * lam else None


def _root_exponent(lam, e: int) -> int:
    for a in range(e):
        z = root_of_unity(e, a) if e > 1 else Fraction(1)
        if as_scalar(z) == lam:
            return a
    raise InvariantError(f"{lam} is not an {e}-th root of unity")


class _Characters:
    """Translate eigenvalue data into classes of the abelianization of G."""

    def __init__(self, group: MatrixGroup):
        self.group = group
        self.spec, project = group.abelianization()
        self.exponent = group.exponent()
        # an element of G representing each basis vector of G/[G,G]
        reps = []
        k = len(self.spec.torsion)
        for r in range(k):
            target = tuple(int(i == r) for i in range(k))
            reps.append(next(g for g in group.elements if project(g) == target))
        self.reps = reps

    def degree(self, f: MultiPolynomial) -> tuple:
        out = []
        for g, m in zip(self.reps, self.spec.torsion):
            lam = _eigen_scalar(f, act(f, g))
            if lam is None:
                raise InvariantError(f"{f} is not a semi-invariant")
            out.append(_root_exponent(lam, m))
        return tuple(out)

    def exponents(self, f: MultiPolynomial) -> tuple:
        out = []
        for m in self.group.generators:
            lam = _eigen_scalar(f, act(f, m))
            if lam is None:
                raise InvariantError(f"{f} is not a semi-invariant")
            out.append(_root_exponent(lam, self.exponent))
        return tuple(out)


def characters_of(polys: Sequence[MultiPolynomial], group: MatrixGroup) -> list[tuple]:
    """Classes in the abelianization of ``group`` of the given semi-invariants."""
    ch = _Characters(group)
    return [ch.degree(f) for f in polys]


def _split(space: list, mats, ring: PolyRing, e: int) -> list[tuple[tuple, list]]:
    """Simultaneous eigenspaces of ``space`` (list of polys) under ``mats``.

    Returns ``[(exponents, basis)]`` ordered by the exponent tuple.
    """
    parts = [((), space)]
    for m in mats:
        nxt = []
        for exps, basis in parts:
            images = [act(b, m) for b in basis]
            found = 0
            for a in range(e):
                z = as_scalar(root_of_unity(e, a)) if e > 1 else Fraction(1)
                cols = [(img - b * z).terms for img, b in zip(images, basis)]
                ker = nullspace(cols, _ORDER.key)
                if not ker:
                    continue
                ech = EchelonBasis(_ORDER.key)
                for c in ker:
                    acc = ring.zero()
                    for ci, b in zip(c, basis):
                        if ci:
                            acc = acc + b * ci
                    ech.add(acc.terms)
                vecs = [_poly(ring, v) for v in ech.basis()]
                found += len(vecs)
                nxt.append((exps + (a,), vecs))
            if found != len(basis):
                raise InvariantError("induced action is not diagonalizable over the expected roots of unity")
        parts = nxt
    return sorted(parts, key=lambda p: p[0])


def gprime_homogenize(gens: Sequence[MultiPolynomial], group: MatrixGroup) -> GradedGeneratorSet:
    """Replace invariants of [G,G] by G-eigenvectors generating the same ring.

    For each degree carrying generators, the degree-d invariants of [G,G] are
    split into simultaneous eigenspaces of the G-generators. Inside each
    eigenspace, vectors outside the span of products of lower-degree output are
    adjoined, so the result is again minimal. Each output is scaled to have
    leading coefficient 1.
    """
    if not gens:
        return GradedGeneratorSet([], [], group.abelianization()[0])
    ring = gens[0].ring
    derived = group.derived_subgroup()
    ch = _Characters(group)
    e = ch.exponent
    degrees = sorted({g.total_degree() for g in gens})
    chosen: dict[int, list] = {}
    out, out_deg, out_exp = [], [], []
    bases = {}
    for d in degrees:
        inv = invariant_space_basis(derived, d, ring)
        span = EchelonBasis(_ORDER.key)
        for p in _products(chosen, d):
            span.add(p.terms)
        parts = _split(inv, group.generators, ring, e)
        bases[d] = parts
        new = []
        for exps, basis in parts:
            for b in basis:
                if span.add(b.terms) is not None:
                    g = b.monic(_ORDER)
                    new.append(g)
                    out.append(g)
                    out_exp.append(exps)
                    out_deg.append(ch.degree(g))
        if new:
            chosen[d] = new
    expected = len(gens)
    if len(out) != expected:
        raise InvariantError(f"homogenized generator count {len(out)} differs from input count {expected}")
    return GradedGeneratorSet(out, out_deg, ch.spec, out_exp, e, bases)


def graded_generator_set(polys: Sequence[MultiPolynomial], group: MatrixGroup) -> GradedGeneratorSet:
    """Wrap explicitly given semi-invariant generators (no minimality check)."""
    ch = _Characters(group)
    polys = list(polys)
    return GradedGeneratorSet(polys, [ch.degree(f) for f in polys], ch.spec, [ch.exponents(f) for f in polys], ch.exponent)
