"""Simplifying ideals by solving for variables that occur linearly.

If a generator reads ``a*T_k + b`` with ``a`` invertible on the locus of
interest and neither ``a`` nor ``b`` involving ``T_k``, then ``T_k = -b/a``
there and the coordinate ring is presented with one variable fewer. Two uses:

* ``singular_locus_empty`` decides smoothness of ``V(I)`` inside the open set
  where given variables do not vanish (a chart or the torus);
* ``prime_certificate`` decides primality by the same reduction, after
  checking that ``a`` is a nonzerodivisor, so that the ring embeds into its
  localization at ``a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Ideal, _det, _one_in, saturate
from .polynomials import Irreducible, MultiPolynomial, Reducible, Unverified, irreducibility_certificate

__all__ = ["LinearSolve", "find_linear_solve", "substitute_solve", "singular_locus_empty", "prime_certificate", "PrimeCertificate"]

YES, NO, UNVERIFIED = "Yes", "No", "Unverified"


@dataclass(frozen=True)
class LinearSolve:
    """``T_var = -rest / coeff`` read off from ``coeff*T_var + rest``."""

    var: int
    coeff: MultiPolynomial  # a single term free of T_var
    rest: MultiPolynomial


def _split_linear(g: MultiPolynomial, k: int):
    """(a, b) with g = a*T_k + b if T_k occurs only linearly, else None."""
    a, b = {}, {}
    for e, c in g.terms.items():
        if e[k] == 0:
            b[e] = c
        elif e[k] == 1:
            a[e[:k] + (0,) + e[k + 1:]] = c
        else:
            return None
    if not a:
        return None
    return MultiPolynomial(g.ring, a), MultiPolynomial(g.ring, b)


def find_linear_solve(gens: Sequence[MultiPolynomial], unit_vars, skip=()) -> LinearSolve | None:
    """A generator solvable for some variable with a unit coefficient.

    The coefficient must be one term whose variables all lie in ``unit_vars``.
    Constant coefficients win, then variables outside ``unit_vars``, then
    shorter generators.
    """
    unit_vars = set(unit_vars)
    best, best_key = None, None
    for g in gens:
        for k in g.variables():
            if k in skip:
                continue
            split = _split_linear(g, k)
            if split is None:
                continue
            a, b = split
            if len(a.terms) != 1:
                continue
            (e,) = a.terms
            if any(x and i not in unit_vars for i, x in enumerate(e)):
                continue
            key = (sum(e) > 0, k in unit_vars, len(g.terms), k)
            if best_key is None or key < best_key:
                best, best_key = LinearSolve(k, a, b), key
    return best


def substitute_solve(h: MultiPolynomial, sol: LinearSolve) -> MultiPolynomial:
    """Numerator of ``h`` at ``T_var = -rest/coeff``, i.e. ``coeff^d * h(...)``."""
    k = sol.var
    d = h.degree_in(k)
    if d == 0:
        return h
    parts: dict = {}
    for e, c in h.terms.items():
        parts.setdefault(e[k], {})[e[:k] + (0,) + e[k + 1:]] = c
    neg_b = -sol.rest
    acc = h.ring.zero()
    for j, terms in parts.items():
        acc = acc + MultiPolynomial(h.ring, terms) * (neg_b ** j) * (sol.coeff ** (d - j))
    return acc


def _product(polys, ring) -> MultiPolynomial:
    out = ring.one()
    for p in polys:
        out = out * p
    return out


def singular_locus_empty(I: Ideal, unit_vars: Sequence[int], codim: int, max_minors: int = 200_000) -> bool | None:
    """Whether V(I) has no singular point where all ``unit_vars`` are nonzero.

    ``codim`` is the codimension of V(I) (assumed equidimensional, as for a
    prime ideal). Variables occurring linearly with a unit coefficient are
    solved for first; the Jacobian criterion is then applied to what remains.
    Returns None when the number of minors exceeds ``max_minors``.
    """
    ring = I.ring
    gens = list(I.generators)
    units = [ring.variable(i) for i in unit_vars]
    unit_set = set(unit_vars)
    eliminated: set = set()
    while True:
        sol = find_linear_solve(gens, unit_set, eliminated)
        if sol is None:
            break
        eliminated.add(sol.var)
        gens = [substitute_solve(h, sol) for h in gens]
        gens = [h for h in gens if not h.is_zero()]
        was_unit = sol.var in unit_set
        units = [substitute_solve(u, sol) for u in units if u != ring.variable(sol.var)]
        if was_unit:
            # T_var stays invertible: keep its value -rest/coeff invertible
            unit_set.discard(sol.var)
            units.append(-sol.rest)
        if any(h.is_constant() for h in gens):
            return True  # the open set misses V(I)
    c = codim - len(eliminated)
    prod = _product(units, ring)
    if c <= 0:
        if not gens or _empty_where_units(gens, prod, I):
            return True
        return None  # a nonempty chart of the wrong dimension
    live = [j for j in range(ring.nvars) if j not in eliminated]
    if len(gens) < c:
        return _empty_where_units(gens, prod, I)
    jac = [[g.diff(j) for j in live] for g in gens]
    count = 0
    minors = []
    seen = set()
    for rows in itertools.combinations(range(len(gens)), c):
        for cols in itertools.combinations(range(len(live)), c):
            count += 1
            if count > max_minors:
                return None
            sub = [[jac[r][q] for q in cols] for r in rows]
            if any(all(x.is_zero() for x in row) for row in sub):
                continue
            d = _det(sub)
            if not d.is_zero() and d not in seen:
                seen.add(d)
                minors.append(d)
    return _empty_where_units(gens + minors, prod, I)


def _empty_where_units(gens, prod: MultiPolynomial, I: Ideal) -> bool:
    ring = I.ring
    if prod.is_constant():
        return _one_in(gens, ring, I.budget)
    n = ring.nvars
    big = ring.extend(1, names=["_u"])
    lifted = [g.to_ring(big) for g in gens]
    lifted.append(big.variable(n) * prod.to_ring(big) - 1)
    return _one_in(lifted, big, I.budget)


@dataclass
class PrimeCertificate:
    """Chain of solved variables ending in a certificate for the final ideal."""

    steps: list = field(default_factory=list)  # (variable, coefficient text)
    terminal: object = None

    def __str__(self) -> str:
        chain = "; ".join(f"solve T{k + 1} (coefficient {c})" for k, c in self.steps)
        return f"{chain + ' then ' if chain else ''}{self.terminal}"


def _contains_all(J: Ideal, polys) -> bool:
    return all(J.contains(p) for p in polys)


def prime_certificate(J: Ideal, max_steps: int = 30):
    """(verdict, certificate) for primality of J over C.

    Solving ``T_k = -b/c`` with a constant c is an isomorphism. With a
    monomial coefficient m, primality needs m to be a nonzerodivisor
    (``J : m^inf == J``); then R embeds into R[1/m], which is a domain iff the
    substituted ideal saturated at m is prime.
    """
    cert = PrimeCertificate()
    ring = J.ring
    cur = J
    for _ in range(max_steps):
        gb = cur.groebner_basis()
        if not gb:
            cert.terminal = "zero ideal"
            return YES, cert
        if len(gb) == 1 and gb[0].is_constant():
            cert.terminal = Reducible("unit ideal")
            return NO, cert
        if len(gb) == 1:
            c = irreducibility_certificate(gb[0])
            cert.terminal = c
            if isinstance(c, Irreducible):
                return YES, cert
            if isinstance(c, Reducible):
                return NO, cert
            return UNVERIFIED, cert
        sol = find_linear_solve(gb, range(ring.nvars))
        if sol is None:
            cert.terminal = Unverified("no variable occurs linearly")
            return UNVERIFIED, cert
        m = sol.coeff
        if not m.is_constant():
            mono = MultiPolynomial(ring, {next(iter(m.terms)): 1})
            sat = saturate(cur, mono)
            if not _contains_all(cur, sat.generators):
                cert.terminal = Unverified(f"{mono} is a zero divisor")
                return UNVERIFIED, cert
        cert.steps.append((sol.var, str(m)))
        new = [substitute_solve(h, sol) for h in gb]
        nxt = Ideal(ring, new, J.budget)
        if not m.is_constant():
            nxt = saturate(nxt, MultiPolynomial(ring, {next(iter(m.terms)): 1}))
        cur = nxt
    cert.terminal = Unverified("step limit reached")
    return UNVERIFIED, cert
