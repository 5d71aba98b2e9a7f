"""Cox rings of quotient singularities and candidate Cox rings of resolutions.

The flow for ``C^n/G``:

1. ``cox_quotient``: invariants of [G,G], made G-homogeneous, and their
   relations; the grading group is the abelianization of G.
2. ``ambient_data``: a Gale dual P0 whose columns span the cone sigma.
3. ``resolve_candidate``: tropicalize, intersect with sigma, resolve the fan,
   pull the ideal back along the new rays and saturate, then verify.
4. ``brute_force_resolve``: the same with explicitly chosen subdivision rays.
"""

from __future__ import annotations

import itertools
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import (
    Budget,
    BudgetExceeded,
    Ideal,
    kernel_of_ring_map,
    krull_dimension,
    saturate,
    unit_after_saturation,
)
from .groups import MatrixGroup
from .invariants import GradedGeneratorSet, act, graded_generator_set, gprime_homogenize, minimal_generators
from .lattice import (
    AbelianGroupSpec,
    cokernel_gale,
    finite_gale_dual,
    identity,
    lattice_equal,
    mat_vec,
    rational_inverse,
)
from .localize import prime_certificate, singular_locus_empty
from .polyhedral import Cone, Fan, SubdivisionStrategy, intersect_fans, resolve_fan, stellar_subdivide
from .polynomials import MultiPolynomial, PolyRing, Reducible, substitute_monomial_map
from .tropical import TropicalFan, project_tropical, ray_in_tropical, tropical_prevariety
from . import _dd

__all__ = [
    "GradedPresentation",
    "ResolutionReport",
    "Verdicts",
    "PseudoReflectionError",
    "PipelineError",
    "cox_quotient",
    "extend_generators",
    "ambient_data",
    "modification_ideal",
    "verify_presentation",
    "smoothness_check",
    "resolve_candidate",
    "brute_force_resolve",
    "f_faces",
    "crepancy_report",
    "ambient_fan_on_support",
    "q_degree",
    "is_q_homogeneous",
]

YES, NO, UNVERIFIED = "Yes", "No", "Unverified"
TROP_CONVENTION = "min"


class PipelineError(RuntimeError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


class PseudoReflectionError(ValueError):
    """The group contains pseudo-reflections."""


# ---------------------------------------------------------------------------
# gradings


def q_degree(exp: Sequence[int], q: Sequence[Sequence[int]], moduli: Sequence[int]) -> tuple:
    """Degree of the monomial T^exp: Q.exp, reduced modulo nonzero moduli."""
    out = []
    for row, m in zip(q, moduli):
        v = sum(a * b for a, b in zip(row, exp))
        out.append(v % m if m else v)
    return tuple(out)


def is_q_homogeneous(f: MultiPolynomial, q, moduli) -> bool:
    return len({q_degree(e, q, moduli) for e in f.terms}) <= 1


@dataclass
class GradedPresentation:
    """``K[T1..Ts]/I`` with a degree matrix.

    ``q`` has one row per entry of ``moduli``; a modulus of 0 marks a free row.
    ``generators`` (optional) are the S-polynomials the T-variables stand for.
    """

    ring: PolyRing
    ideal: Ideal
    q: list
    moduli: list
    spec: AbelianGroupSpec
    generators: list | None = None
    group: MatrixGroup | None = None
    graded: GradedGeneratorSet | None = None

    @property
    def s(self) -> int:
        return self.ring.nvars

    @property
    def relations(self) -> list:
        return list(self.ideal.generators)

    def degree(self, i: int) -> tuple:
        e = [0] * self.s
        e[i] = 1
        return q_degree(e, self.q, self.moduli)

    def degree_of(self, f: MultiPolynomial) -> tuple:
        degs = {q_degree(e, self.q, self.moduli) for e in f.terms}
        if len(degs) != 1:
            raise ValueError(f"{f} is not homogeneous")
        return degs.pop()

    def validate(self) -> None:
        for g in self.ideal.generators:
            if not is_q_homogeneous(g, self.q, self.moduli):
                raise PipelineError("grading", f"relation {g} is not homogeneous")

    def to_dict(self) -> dict:
        return {
            "variables": list(self.ring.names),
            "relations": [str(g) for g in self.ideal.generators],
            "degree_matrix": [list(r) for r in self.q],
            "moduli": list(self.moduli),
            "class_group": str(self.spec),
            "generators": [str(g) for g in self.generators] if self.generators else None,
        }


def cox_quotient(
    group: MatrixGroup,
    base_generators: Sequence | None = None,
    budget: Budget | None = None,
    max_degree: int | None = None,
) -> GradedPresentation:
    """Cox ring of ``C^n/G`` as ``K[T]/I0`` graded by the abelianization of G.

    ``base_generators`` (strings in S1..Sn or polynomials) replaces the
    automatically chosen invariant generators; they must be semi-invariants
    of G generating the invariants of [G,G] (the caller's responsibility).
    ``max_degree`` caps the generator search below the Noether bound.
    """
    if group.has_pseudo_reflections():
        raise PseudoReflectionError(
            "group contains pseudo-reflections; replace G by G/H for the normal subgroup H "
            "generated by them (C^n/G is then a quotient of C^n/H = C^n by G/H)"
        )
    ring_s = PolyRing(group.degree, group.field_order, names=[f"S{i + 1}" for i in range(group.degree)])
    if base_generators is not None:
        polys = [ring_s.parse(g) if isinstance(g, str) else g.to_ring(ring_s) for g in base_generators]
        graded = graded_generator_set(polys, group)
        derived = group.derived_subgroup()
        for f in polys:
            for h in derived.generators:
                if act(f, h) != f:
                    raise PipelineError("cox_quotient", f"{f} is not invariant under the derived subgroup")
    else:
        derived = group.derived_subgroup()
        gens = minimal_generators(derived, ring_s, max_degree)
        graded = gprime_homogenize(gens, group)
    s = len(graded.generators)
    ring_t = PolyRing(s, ring_s.order)
    try:
        kernel = kernel_of_ring_map(graded.generators, ring_t, budget)
        ideal = Ideal(ring_t, kernel.minimal_generators(), budget)
    except BudgetExceeded as exc:
        raise PipelineError("cox_quotient", str(exc)) from exc
    q = graded.q0()
    pres = GradedPresentation(ring_t, ideal, q, list(graded.moduli), graded.spec, list(graded.generators), group, graded)
    pres.validate()
    return pres


def _as_t_poly(pres: GradedPresentation, f) -> MultiPolynomial:
    if isinstance(f, str):
        return pres.ring.parse(f)
    return f


def extend_generators(pres: GradedPresentation, extra: Sequence) -> GradedPresentation:
    """Present the same ring with additional generators ``T_{s+j} = extra_j(T)``.

    The new ideal is ``I0 + <T_{s+j} - extra_j>``; each extra polynomial must
    be homogeneous so that the new variable gets a well defined degree.
    """
    extra = [_as_t_poly(pres, f) for f in extra]
    if not extra:
        return pres
    s, k = pres.s, len(extra)
    degs = []
    for f in extra:
        if f.is_zero() or not is_q_homogeneous(f, pres.q, pres.moduli):
            raise PipelineError("extend_generators", f"{f} is not homogeneous for the degree matrix")
        degs.append(pres.degree_of(f))
    ring = PolyRing(s + k, pres.ring.order)
    rels = [g.to_ring(ring) for g in pres.ideal.generators]
    for j, f in enumerate(extra):
        rels.append(ring.variable(s + j) - f.to_ring(ring))
    q = [list(row) + [d[r] for d in degs] for r, row in enumerate(pres.q)]
    gens = None
    if pres.generators:
        gens = list(pres.generators) + [f.compose(pres.generators) for f in extra]
    out = GradedPresentation(ring, Ideal(ring, rels, pres.ideal.budget), q, list(pres.moduli), pres.spec, gens, pres.group)
    out.validate()
    return out


# ---------------------------------------------------------------------------
# ambient toric data


def _columns(p) -> list[tuple]:
    return [tuple(col) for col in zip(*p)]


def ambient_data(pres: GradedPresentation, p0_override=None):
    """(P0, sigma, Sigma0): Gale dual rows, the cone over its columns, and faces(sigma)."""
    s = pres.s
    if any(m == 0 for m in pres.moduli):
        raise PipelineError("ambient_data", "the grading has free part; expected a finite class group")
    if pres.q:
        computed = finite_gale_dual(pres.q, pres.moduli)
    else:
        computed = identity(s)
    if p0_override is not None:
        p0 = [list(map(int, r)) for r in p0_override]
        if len(p0) != s or any(len(r) != s for r in p0):
            raise PipelineError("ambient_data", f"P0 override must be {s} x {s}")
        for i, row in enumerate(p0):
            if any(d != 0 for d in q_degree(row, pres.q, pres.moduli)):
                raise PipelineError("ambient_data", f"P0 override row {i + 1} {row} is not in the kernel of the degree map")
        if not lattice_equal(p0, computed):
            raise PipelineError("ambient_data", "P0 override rows do not span the full kernel of the degree map")
    else:
        p0 = computed
    sigma = Cone(_columns(p0), (), s)
    return p0, sigma, Fan.from_cone(sigma)


def modification_ideal(pres: GradedPresentation, p0, new_rays: Sequence[Sequence[int]], budget: Budget | None = None):
    """Pull I0 back along the toric modification adding ``new_rays`` and saturate.

    Returns ``(I, P, Q, moduli, spec)`` with ``P = [P0 | v_1 .. v_m]``.
    """
    s = pres.s
    rays = [tuple(int(x) for x in v) for v in new_rays]
    if not rays:
        return pres.ideal, [list(r) for r in p0], [list(r) for r in pres.q], list(pres.moduli), pres.spec
    inv = rational_inverse(p0)
    sections = []
    for v in rays:
        if _dd.primitive(v) != v:
            raise PipelineError("modification", f"{v} is not primitive")
        w = mat_vec(inv, v)
        if any(x < 0 for x in w):
            raise PipelineError("modification", f"{v} does not lie in sigma")
        sections.append(w)
    m = len(rays)
    ring = PolyRing(s + m, pres.ring.order)
    images = []
    for i in range(s):
        e = [Fraction(0)] * (s + m)
        e[i] = Fraction(1)
        for j, w in enumerate(sections):
            e[s + j] = w[i]
        images.append(e)
    pulled = []
    for g in pres.ideal.generators:
        try:
            h, _ = substitute_monomial_map(g, images, ring)
        except ValueError as exc:
            raise PipelineError("modification", f"invalid section: {exc}") from exc
        pulled.append(h)
    prod = ring.one()
    for i in range(s + m):
        prod = prod * ring.variable(i)
    b = budget or pres.ideal.budget
    try:
        ideal = saturate(Ideal(ring, pulled, b), prod)
        ideal = Ideal(ring, ideal.minimal_generators(), b)
    except BudgetExceeded as exc:
        raise PipelineError("modification", str(exc)) from exc
    p = [list(row) + [v[r] for v in rays] for r, row in enumerate(p0)]
    q, spec, moduli = cokernel_gale(p)
    for g in ideal.generators:
        if not is_q_homogeneous(g, q, moduli):
            raise PipelineError("modification", f"relation {g} is not homogeneous for the new degree matrix")
    if spec.torsion:
        warnings.warn(f"class group of the modification has torsion: {spec}", stacklevel=2)
    return ideal, p, q, moduli, spec


# ---------------------------------------------------------------------------
# verification


@dataclass
class Verdicts:
    variables_prime: list = field(default_factory=list)  # [(verdict, certificate)]
    codim2: bool | None = None
    torus_part_smooth: bool | None = None
    dimension: int | None = None

    def all_yes(self) -> bool:
        return all(v == YES for v, _ in self.variables_prime) and bool(self.codim2) and bool(self.torus_part_smooth)

    def to_dict(self) -> dict:
        return {
            "variables_prime": [{"variable": i + 1, "verdict": v, "certificate": str(c)} for i, (v, c) in enumerate(self.variables_prime)],
            "codim2": self.codim2,
            "torus_part_smooth": self.torus_part_smooth,
            "dimension": self.dimension,
        }


def _zero_divisor(I: Ideal, i: int) -> bool:
    """Is T_i a zero divisor modulo I, i.e. I : T_i^inf != I?"""
    t = I.ring.variable(i)
    if len(I.generators) == 1:
        return I.generators[0].monomial_content()[i] > 0
    return not all(I.contains(g) for g in saturate(I, t).generators)


def _variable_prime(I: Ideal, i: int, saturated: bool = False):
    # a zero divisor cannot define a prime divisor of an integral Cox ring
    if not saturated and _zero_divisor(I, i):
        return NO, Reducible(f"T{i + 1} is a zero divisor")
    return prime_certificate(I.subs({i: 0}))


def _expected_codim(I: Ideal, dim: int) -> int:
    return I.ring.nvars - dim


def verify_presentation(I: Ideal, check_codim2: bool = True, saturated: bool = False) -> Verdicts:
    """Primality of the variables, the codimension-two condition, and torus smoothness.

    ``saturated=True`` asserts ``I = I : (T1...Ts)^inf`` (as produced by
    ``modification_ideal``), which makes every variable a nonzerodivisor and
    skips that check.
    """
    n = I.ring.nvars
    dim = krull_dimension(I)
    out = Verdicts(dimension=dim)
    for i in range(n):
        out.variables_prime.append(_variable_prime(I, i, saturated))
    if check_codim2:
        ok = True
        for i, j in itertools.combinations(range(n), 2):
            K = I + [I.ring.variable(i), I.ring.variable(j)]
            d = krull_dimension(K)
            if d != float("-inf") and dim - d < 2:
                ok = False
                break
        out.codim2 = ok
    out.torus_part_smooth = singular_locus_empty(I, list(range(n)), _expected_codim(I, dim)) if not I.is_zero() else True
    return out


def _ray_index(p) -> dict:
    out = {}
    for j, col in enumerate(_columns(p)):
        out.setdefault(_dd.primitive(col), j)
    return out


def smoothness_check(I: Ideal, p, fan: Fan, budget_seconds: float | None = None):
    """(verdict, details) for X inside the toric variety of ``fan``.

    No if a cone is not regular. Otherwise each maximal cone's chart, the
    part of V(I) where the variables of rays outside the cone do not vanish,
    must have no singular point.
    """
    details = {"charts": 0, "failed_cone": None, "reason": ""}
    if not fan.is_regular():
        bad = next(c for c in fan.cones if not c.is_regular())
        details.update(failed_cone=[list(r) for r in bad.rays], reason="fan is not regular")
        return NO, details
    index = _ray_index(p)
    n = I.ring.nvars
    if I.is_zero():
        details["reason"] = "ambient toric variety is smooth and the ideal is zero"
        return YES, details
    codim = _expected_codim(I, krull_dimension(I))
    start = time.monotonic()
    for cone in fan.cones:
        inside = set()
        for r in cone.rays:
            if r not in index:
                details.update(failed_cone=[list(x) for x in cone.rays], reason=f"ray {r} has no variable")
                return UNVERIFIED, details
            inside.add(index[r])
        outside = [j for j in range(n) if j not in inside]
        try:
            ok = singular_locus_empty(I, outside, codim)
        except BudgetExceeded:
            ok = None
        details["charts"] += 1
        if ok is None:
            details.update(failed_cone=[list(x) for x in cone.rays], reason="chart check exceeded its budget")
            return UNVERIFIED, details
        if not ok:
            details.update(failed_cone=[list(x) for x in cone.rays], reason="singular points in this chart")
            return NO, details
        if budget_seconds is not None and time.monotonic() - start > budget_seconds:
            details.update(failed_cone=[list(x) for x in cone.rays], reason="time budget exceeded")
            return UNVERIFIED, details
    details["reason"] = "all charts smooth"
    return YES, details


def f_faces(I0: Ideal) -> list[tuple]:
    """Variable subsets S (0-based, sorted) whose torus orbit meets V(I0)."""
    n = I0.ring.nvars
    out = []
    for k in range(n + 1):
        for subset in itertools.combinations(range(n), k):
            zero = {i: 0 for i in range(n) if i not in subset}
            J = I0.subs(zero) if zero else I0
            if J.is_zero():
                out.append(subset)
                continue
            if not subset:
                if not J.is_unit():
                    out.append(subset)
                continue
            if not unit_after_saturation(J, list(subset)):
                out.append(subset)
    return out


# ---------------------------------------------------------------------------
# reports


@dataclass
class ResolutionReport:
    presentation: GradedPresentation
    p0: list
    sigma: Cone
    new_rays: list = field(default_factory=list)
    p: list | None = None
    ideal: Ideal | None = None
    q: list | None = None
    moduli: list | None = None
    spec: AbelianGroupSpec | None = None
    fan: Fan | None = None
    verdicts: Verdicts | None = None
    smooth: str = UNVERIFIED
    smooth_details: dict = field(default_factory=dict)
    crepancy: dict | None = None
    stage: str = "done"
    error: str | None = None
    strategy: str = ""
    tropical_exact: bool = True
    pruned_cones: list = field(default_factory=list)
    attempts: int = 0
    notes: list = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.new_rays)

    @property
    def variables(self) -> int:
        return self.ideal.ring.nvars if self.ideal is not None else self.presentation.s

    def fully_verified(self) -> bool:
        return self.stage == "done" and self.smooth == YES and self.verdicts is not None and self.verdicts.all_yes()

    def has_unverified(self) -> bool:
        if self.smooth == UNVERIFIED:
            return True
        if self.verdicts is None:
            return False
        return self.verdicts.torus_part_smooth is None or any(v == UNVERIFIED for v, _ in self.verdicts.variables_prime)

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "error": self.error,
            "strategy": self.strategy,
            "P0": [list(r) for r in self.p0],
            "new_rays": [list(v) for v in self.new_rays],
            "P": [list(r) for r in self.p] if self.p else None,
            "relations": [str(g) for g in self.ideal.generators] if self.ideal is not None else None,
            "degree_matrix": [list(r) for r in self.q] if self.q else None,
            "moduli": list(self.moduli) if self.moduli else None,
            "class_group": str(self.spec) if self.spec is not None else None,
            "fan": self.fan.to_dict() if self.fan is not None else None,
            "verdicts": self.verdicts.to_dict() if self.verdicts else None,
            "smooth": self.smooth,
            "smooth_details": self.smooth_details,
            "crepancy": self.crepancy,
            "tropical_exact": self.tropical_exact,
            "pruned_cones": self.pruned_cones,
            "attempts": self.attempts,
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        lines = [f"stage: {self.stage}" + (f" ({self.error})" if self.error else "")]
        lines.append(f"new rays ({self.m}): " + ", ".join(str(tuple(v)) for v in self.new_rays))
        if self.spec is not None:
            lines.append(f"class group: {self.spec}")
        if self.ideal is not None:
            lines.append(f"variables: {self.variables}, relations: {len(self.ideal.generators)}")
            for g in self.ideal.generators:
                lines.append(f"  {g}")
        if self.verdicts is not None:
            prime = ", ".join(f"T{i + 1}:{v}" for i, (v, _) in enumerate(self.verdicts.variables_prime))
            lines.append(f"variables prime: {prime}")
            lines.append(f"codim2: {self.verdicts.codim2}, torus part smooth: {self.verdicts.torus_part_smooth}")
        lines.append(f"smooth: {self.smooth}")
        if self.crepancy:
            c = self.crepancy
            lines.append(f"crepancy: {c['verdict']} ({c['exceptional_divisor_count']} exceptional vs {c['junior_count']} junior)")
        return "\n".join(lines)


def crepancy_report(group: MatrixGroup, report: ResolutionReport) -> dict:
    """Compare the exceptional divisor count with the number of junior classes."""
    m = report.m
    if not group.is_special_linear():
        return {"exceptional_divisor_count": m, "junior_count": None, "verdict": "NotApplicable"}
    j = group.junior_classes()
    if m == j:
        verdict = "Crepant"
    elif m > j:
        verdict = "NotCrepant"
    else:
        verdict = "Inconsistent"
    return {"exceptional_divisor_count": m, "junior_count": j, "verdict": verdict}


# ---------------------------------------------------------------------------
# tropical part


def _tropical_sigma_fan(pres: GradedPresentation, p0, sigma_fan: Fan):
    """(Sigma', projected tropical fan, pruned cones) inside sigma."""
    gens = list(pres.ideal.generators)
    s = pres.s
    if not gens:
        return sigma_fan, None, []
    trop = tropical_prevariety(gens, TROP_CONVENTION)
    proj = project_tropical(p0, trop)
    inter = intersect_fans(proj.fan, sigma_fan)
    pruned = []
    if len(gens) > 1:
        inv = rational_inverse(p0)
        kept = []

        def ok(c: Cone) -> bool:
            p = c.relative_interior_point()
            w = mat_vec(inv, p)
            return ray_in_tropical(pres.ideal, w, TROP_CONVENTION)

        work = list(inter.cones)
        seen = set()
        while work:
            c = work.pop(0)
            if c in seen or c.dim == 0:
                continue
            seen.add(c)
            if any(k.contains_cone(c) for k in kept):
                continue
            if ok(c):
                kept.append(c)
            else:
                pruned.append([list(r) for r in c.rays])
                work.extend(c.facet_cones())
        inter = Fan(kept, s)
        proj.pruned = pruned
    return inter, proj, pruned


def _carrier(cone: Cone, x) -> Cone:
    """The face of ``cone`` containing ``x`` in its relative interior."""
    tight = [f for f in cone.facets if sum(a * b for a, b in zip(f, x)) == 0]
    rays = [r for r in cone.rays if all(sum(a * b for a, b in zip(f, r)) == 0 for f in tight)]
    return Cone(rays, cone.lineality, cone.ambient_dim)


def ambient_fan_on_support(fan: Fan, support: TropicalFan | None) -> Fan:
    """Cones of ``fan`` whose relative interior meets the tropical support.

    For a maximal cone M and a support cone t, the faces of M whose relative
    interior meets t are the carriers in M of relative interior points of the
    faces of M & t, so only maximal cones need intersecting.
    """
    if support is None:
        return fan
    kept = {}
    for m in fan.cones:
        for t in support.fan.cones:
            k = m.intersect(t)
            if k.dim == 0:
                continue
            for g in k.faces():
                if g.dim == 0:
                    continue
                c = _carrier(m, g.relative_interior_point())
                kept.setdefault(c._key(), c)
    return Fan(sorted(kept.values(), key=lambda c: (c.dim, c.rays)), fan.ambient_dim)


def _finish(report: ResolutionReport, group: MatrixGroup | None, verify: bool, smooth_seconds: float | None):
    pres = report.presentation
    try:
        report.stage = "modification"
        I, p, q, moduli, spec = modification_ideal(pres, report.p0, report.new_rays)
        report.ideal, report.p, report.q, report.moduli, report.spec = I, p, q, moduli, spec
        if verify:
            report.stage = "verification"
            report.verdicts = verify_presentation(I, saturated=bool(report.new_rays))
            report.stage = "smoothness"
            report.smooth, report.smooth_details = smoothness_check(I, p, report.fan, smooth_seconds)
        report.stage = "done"
    except (PipelineError, BudgetExceeded) as exc:
        report.error = str(exc)
        return report
    if group is not None:
        report.crepancy = crepancy_report(group, report)
    return report


def resolve_candidate(
    pres: GradedPresentation,
    p0_override=None,
    strategy=SubdivisionStrategy,
    verify: bool = True,
    smooth_seconds: float | None = None,
) -> ResolutionReport:
    """Candidate Cox ring of a resolution of ``Spec K[T]/I0 // H``.

    Sigma' is faces(sigma) intersected with the projected tropical variety of
    I0; its regular refinement supplies the new rays. Rays of Sigma' outside
    sigma(1) come first, then inserted rays in insertion order.
    """
    p0, sigma, sigma_fan = ambient_data(pres, p0_override)
    report = ResolutionReport(pres, p0, sigma, strategy=getattr(strategy, "name", str(strategy)))
    try:
        report.stage = "tropical"
        inter, proj, pruned = _tropical_sigma_fan(pres, p0, sigma_fan)
        report.pruned_cones = pruned
        report.tropical_exact = proj is None or proj.exact
        report.stage = "fan"
        resolved, inserted = resolve_fan(inter, strategy)
    except (PipelineError, BudgetExceeded) as exc:
        report.error = str(exc)
        return report
    sigma_rays = set(sigma.rays)
    extra = sorted(r for r in inter.rays if r not in sigma_rays)
    report.new_rays = extra + [tuple(v) for v in inserted if tuple(v) not in extra]
    report.fan = resolved
    return _finish(report, pres.group, verify, smooth_seconds)


def _subdivided(sigma_fan: Fan, vectors) -> Fan:
    f = sigma_fan
    for v in vectors:
        f = stellar_subdivide(f, v)
    return f


def brute_force_resolve(
    pres: GradedPresentation,
    p0_override=None,
    vectors: Sequence[Sequence[int]] | None = None,
    strategy=SubdivisionStrategy,
    max_size: int | None = None,
    smooth_seconds: float | None = None,
) -> ResolutionReport:
    """Search subsets of candidate rays for a verified resolution.

    The pool is the rays a regular refinement of Sigma' adds to sigma. Subsets
    are tried by increasing size, then lexicographically; sigma is stellarly
    subdivided at the chosen rays in order. Explicit ``vectors`` skip the search.
    """
    p0, sigma, sigma_fan = ambient_data(pres, p0_override)
    group = pres.group
    try:
        inter, proj, pruned = _tropical_sigma_fan(pres, p0, sigma_fan)
    except (PipelineError, BudgetExceeded) as exc:
        report = ResolutionReport(pres, p0, sigma, stage="tropical", error=str(exc))
        return report

    def attempt(chosen) -> ResolutionReport:
        rep = ResolutionReport(pres, p0, sigma, strategy="stellar at " + ", ".join(str(tuple(v)) for v in chosen))
        rep.pruned_cones = pruned
        rep.tropical_exact = proj is None or proj.exact
        rep.new_rays = [tuple(int(x) for x in v) for v in chosen]
        try:
            rep.fan = ambient_fan_on_support(_subdivided(sigma_fan, rep.new_rays), proj)
        except ValueError as exc:
            rep.stage, rep.error = "fan", str(exc)
            return rep
        return _finish(rep, group, True, smooth_seconds)

    if vectors is not None:
        rep = attempt([tuple(v) for v in vectors])
        rep.attempts = 1
        return rep
    resolved, inserted = resolve_fan(inter, strategy)
    sigma_rays = set(sigma.rays)
    pool = sorted({r for r in inter.rays if r not in sigma_rays} | {tuple(v) for v in inserted})
    best = None
    tries = 0
    top = len(pool) if max_size is None else min(max_size, len(pool))
    for k in range(top + 1):
        for subset in itertools.combinations(pool, k):
            tries += 1
            rep = attempt(list(subset))
            rep.attempts = tries
            if rep.fully_verified():
                return rep
            if best is None or _score(rep) > _score(best):
                best = rep
    if best is not None:
        best.notes.append("candidate pool exhausted without a fully verified resolution")
        best.attempts = tries
    return best


def _score(rep: ResolutionReport) -> tuple:
    prime = sum(v == YES for v, _ in rep.verdicts.variables_prime) if rep.verdicts else -1
    return (rep.stage == "done", rep.smooth == YES, prime, -rep.m)
