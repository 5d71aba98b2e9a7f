"""Buchberger-based ideal arithmetic.

Reduced Groebner bases (Buchberger with the Gebauer-Moeller pair criteria and
normal pair selection), normal forms, elimination, saturation, Krull
dimension, initial ideals, kernels of ring maps and Jacobian-minor ideals.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import as_scalar
from .polynomials import MonomialOrder, MultiPolynomial, PolyRing

__all__ = [
    "Budget",
    "BudgetExceeded",
    "Ideal",
    "EMPTY",
    "groebner_basis",
    "normal_form",
    "eliminate",
    "saturate",
    "krull_dimension",
    "kernel_of_ring_map",
    "initial_form_ideal",
    "contains_monomial",
    "jacobian_minor_ideal",
    "DEFAULT_BUDGET",
]

#: dimension reported for the unit ideal (empty variety)
EMPTY = -math.inf


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its resource cap."""


@dataclass(frozen=True)
class Budget:
    max_basis: int = 4000
    max_pairs: int = 200_000
    max_seconds: float | None = None


DEFAULT_BUDGET = Budget()


# ---------------------------------------------------------------------------
# core routines on raw term dicts


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _neg(key):
    return tuple(-x for x in key)


def _monic(terms: dict, lm) -> dict:
    lc = terms[lm]
    if lc == 1:
        return terms
    inv = 1 / lc
    return {e: as_scalar(c * inv) for e, c in terms.items()}


def _reduce(f: dict, basis: list, key, full: bool = True) -> dict:
    """Remainder of f modulo ``basis`` (list of (lm, monic terms)).

    Terms are processed from the largest down with a lazy min-heap on negated
    keys; every term ever pushed is smaller than the one being processed, so a
    popped monomial never reappears.
    """
    p = dict(f)
    heap = [(_neg(key(e)), e) for e in p]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        for lm, g in basis:
            if _divides(lm, e):
                q = tuple(x - y for x, y in zip(e, lm))
                for ge, gc in g.items():
                    if ge is lm or ge == lm:
                        continue
                    ne = tuple(x + y for x, y in zip(ge, q))
                    v = p.get(ne)
                    if v is None:
                        p[ne] = -(c * gc)
                        heapq.heappush(heap, (_neg(key(ne)), ne))
                    else:
                        v = v - c * gc
                        if v:
                            p[ne] = v
                        else:
                            del p[ne]
                break
        else:
            rem[e] = c
            if not full:
                rem.update(p)
                return rem
    return rem


def _spoly(f: dict, flm, g: dict, glm) -> dict:
    l = _lcm(flm, glm)
    qf = tuple(x - y for x, y in zip(l, flm))
    qg = tuple(x - y for x, y in zip(l, glm))
    out: dict = {}
    for e, c in f.items():
        out[tuple(x + y for x, y in zip(e, qf))] = c
    for e, c in g.items():
        ne = tuple(x + y for x, y in zip(e, qg))
        v = out.get(ne)
        if v is None:
            out[ne] = -c
        else:
            v = v - c
            if v:
                out[ne] = v
            else:
                del out[ne]
    return out


def _buchberger(polys: list[dict], order: MonomialOrder, budget: Budget, weights=None) -> list[tuple]:
    """Reduced Groebner basis of the given term dicts; returns [(lm, terms)].

    Pairs are selected by sugar degree (with respect to ``weights``, default
    all ones), ties broken by the monomial order of the lcm.
    """
    key = order.key
    start = time.monotonic()
    store: list[tuple] = []  # (lm, monic terms)
    sugar: list = []
    active: list[int] = []
    pairs: list = []  # heap of (sugar, key(lcm), i, j)
    live_pairs: set = set()

    def deg(e):
        if weights is None:
            return sum(e)
        return sum(w * x for w, x in zip(weights, e))

    def lm_of(t):
        return max(t, key=key)

    def add(terms: dict, sug):
        lm = lm_of(terms)
        terms = _monic(terms, lm)
        h = len(store)
        store.append((lm, terms))
        sugar.append(sug)
        if len(store) > budget.max_basis:
            raise BudgetExceeded(f"Groebner basis exceeded {budget.max_basis} elements")
        # Gebauer-Moeller update
        cand = [(g, _lcm(lm, store[g][0])) for g in active]
        keep = []
        while cand:
            g, l = cand.pop(0)
            if _coprime(lm, store[g][0]) or not (
                any(_divides(l2, l) for _, l2 in cand) or any(_divides(l2, l) for _, l2, _ in keep)
            ):
                keep.append((g, l, _coprime(lm, store[g][0])))
        # drop pairs (i, j) whose lcm is strictly divisible through h
        for pr in list(live_pairs):
            i, j = pr
            lij = _lcm(store[i][0], store[j][0])
            if _divides(lm, lij):
                if _lcm(store[i][0], lm) != lij and _lcm(store[j][0], lm) != lij:
                    live_pairs.discard(pr)
        for g, l, cop in keep:
            if cop:
                continue
            pr = (g, h)
            live_pairs.add(pr)
            dl = deg(l)
            sg = max(sugar[g] + dl - deg(store[g][0]), sug + dl - deg(lm))
            heapq.heappush(pairs, (sg, key(l), g, h))
        active[:] = [g for g in active if not _divides(lm, store[g][0])]
        active.append(h)

    # seed: interreduce inputs lightly by processing in increasing order
    seeds = [t for t in polys if t]
    seeds.sort(key=lambda t: key(lm_of(t)))
    for t in seeds:
        r = _reduce(t, [store[g] for g in active], key)
        if r:
            if len(r) == 1 and not any(next(iter(r))):
                n = len(next(iter(r)))
                return [((0,) * n, {(0,) * n: Fraction(1)})]
            add(r, max(deg(e) for e in t))

    processed = 0
    while pairs:
        sg, _, i, j = heapq.heappop(pairs)
        if (i, j) not in live_pairs:
            continue
        live_pairs.discard((i, j))
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded(f"Groebner computation exceeded {budget.max_pairs} pairs")
        if budget.max_seconds is not None and time.monotonic() - start > budget.max_seconds:
            raise BudgetExceeded(f"Groebner computation exceeded {budget.max_seconds} s")
        s = _spoly(store[i][1], store[i][0], store[j][1], store[j][0])
        if not s:
            continue
        r = _reduce(s, [store[g] for g in active], key)
        if r:
            if len(r) == 1 and not any(next(iter(r))):
                n = len(next(iter(r)))
                return [((0,) * n, {(0,) * n: Fraction(1)})]
            add(r, max(sg, max(deg(e) for e in r)))

    # reduce: the active set is already a minimal basis
    basis = [store[g] for g in active]
    basis.sort(key=lambda b: key(b[0]))
    out = []
    for idx, (lm, t) in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = dict(t)
        del tail[lm]
        r = _reduce(tail, others, key)
        r[lm] = t[lm]
        out.append((lm, r))
    return out


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """An ideal of a polynomial ring with cached reduced Groebner bases."""

    def __init__(self, ring: PolyRing, generators: Iterable[MultiPolynomial] = (), budget: Budget | None = None):
        self.ring = ring
        gens = []
        for g in generators:
            if not isinstance(g, MultiPolynomial):
                g = ring(g)
            if g.ring.nvars != ring.nvars:
                raise ValueError("generator lives in a different ring")
            if not g.is_zero():
                gens.append(g)
        self.generators: tuple = tuple(gens)
        self.budget = budget or DEFAULT_BUDGET
        #: optional variable weights used for sugar-degree pair selection
        self.grading = None
        self._gb: dict = {}

    def __repr__(self) -> str:
        return f"Ideal({[str(g) for g in self.generators]})"

    @property
    def gens(self) -> tuple:
        return self.generators

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def is_zero(self) -> bool:
        return not self.generators

    def is_principal(self) -> bool:
        return len(self.generators) <= 1

    # -- Groebner bases ------------------------------------------------------
    def groebner_basis(self, order: MonomialOrder | None = None) -> list[MultiPolynomial]:
        order = order or MonomialOrder.degrevlex()
        hit = self._gb.get(order)
        if hit is None:
            raw = _buchberger([dict(g.terms) for g in self.generators], order, self.budget, self.grading)
            hit = [MultiPolynomial(self.ring, t) for _, t in raw]
            self._gb[order] = hit
        return list(hit)

    def _basis_pairs(self, order: MonomialOrder):
        gb = self.groebner_basis(order)
        return [(g.leading_monomial(order), g.terms) for g in gb]

    def normal_form(self, f: MultiPolynomial, order: MonomialOrder | None = None) -> MultiPolynomial:
        order = order or MonomialOrder.degrevlex()
        if not isinstance(f, MultiPolynomial):
            f = self.ring(f)
        return MultiPolynomial(self.ring, _reduce(f.terms, self._basis_pairs(order), order.key))

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.issubset(other) and other.issubset(self)

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.generators + other.generators, self.budget)
        return Ideal(self.ring, self.generators + tuple(other), self.budget)

    def with_budget(self, budget: Budget) -> "Ideal":
        return Ideal(self.ring, self.generators, budget)

    def subs(self, values: dict) -> "Ideal":
        """Ideal generated by the generators with some variables set to scalars."""
        return Ideal(self.ring, [g.subs(values) for g in self.generators], self.budget)

    def is_homogeneous(self, weights: Sequence | None = None) -> bool:
        return all(g.is_homogeneous(weights) for g in self.generators)

    # -- derived constructions -----------------------------------------------
    def eliminate(self, drop: Iterable[int]) -> "Ideal":
        return eliminate(self, drop)

    def saturate(self, h: MultiPolynomial) -> "Ideal":
        return saturate(self, h)

    def krull_dimension(self):
        return krull_dimension(self)

    def initial_form_ideal(self, w: Sequence[int]) -> "Ideal":
        return initial_form_ideal(self, w)

    def contains_monomial(self) -> bool:
        return contains_monomial(self)

    def minimal_generators(self) -> list[MultiPolynomial]:
        """Drop generators lying in the ideal of the others (greedy, in order)."""
        kept = list(self.generators)
        i = len(kept) - 1
        while i >= 0 and len(kept) > 1:
            rest = Ideal(self.ring, kept[:i] + kept[i + 1:], self.budget)
            if rest.contains(kept[i]):
                kept.pop(i)
            i -= 1
        return kept


def groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> list[MultiPolynomial]:
    return I.groebner_basis(order)


def normal_form(f: MultiPolynomial, I: Ideal, order: MonomialOrder | None = None) -> MultiPolynomial:
    return I.normal_form(f, order)


def eliminate(I: Ideal, drop: Iterable[int]) -> Ideal:
    """I intersected with the subring in the variables not in ``drop``."""
    drop = sorted(set(drop))
    if not drop:
        return I
    order = MonomialOrder.elimination(drop)
    gb = I.groebner_basis(order)
    keep = [g for g in gb if all(not any(e[i] for i in drop) for e in g.terms)]
    return Ideal(I.ring, keep, I.budget)


def _one_in(gens: Sequence[MultiPolynomial], ring: PolyRing, budget: Budget) -> bool:
    if not gens:
        return False
    raw = _buchberger([dict(g.terms) for g in gens], MonomialOrder.degrevlex(), budget)
    return len(raw) == 1 and not any(raw[0][0])


def _monomial_exponent(h: MultiPolynomial):
    if h.is_monomial():
        return next(iter(h.terms))
    return None


def saturate(I: Ideal, h: MultiPolynomial, method: str = "auto") -> Ideal:
    """I : h^infinity.

    ``method="rabinowitsch"`` adjoins y, adds y*h - 1 and eliminates y.
    ``"auto"`` uses monomial-content division for principal ideals saturated
    at a monomial and otherwise saturates variable by variable when h is a
    monomial (each step a Rabinowitsch elimination with a single variable).
    """
    if h.is_zero():
        raise ValueError("cannot saturate at zero")
    if I.is_zero():
        return I
    mono = _monomial_exponent(h)
    if mono is not None and not any(mono):
        return I
    if method == "auto" and mono is not None:
        if len(I.generators) == 1:
            g = I.generators[0]
            m = g.monomial_content()
            cut = tuple(x if k else 0 for x, k in zip(m, mono))
            return Ideal(I.ring, [g.divide_monomial(cut) if any(cut) else g], I.budget)
        J = I
        for i, k in enumerate(mono):
            if k:
                J = _rabinowitsch(J, I.ring.variable(i))
                if J.is_unit():
                    break
        return J
    return _rabinowitsch(I, h)


def _rabinowitsch(I: Ideal, h: MultiPolynomial) -> Ideal:
    n = I.ring.nvars
    big = I.ring.extend(1, names=["_y"])
    y = big.variable(n)
    gens = [g.to_ring(big) for g in I.generators]
    gens.append(y * h.to_ring(big) - 1)
    J = Ideal(big, gens, I.budget)
    gb = J.groebner_basis(MonomialOrder.elimination([n]))
    keep = [
        MultiPolynomial(I.ring, {e[:n]: c for e, c in g.terms.items()})
        for g in gb
        if all(e[n] == 0 for e in g.terms)
    ]
    return Ideal(I.ring, keep, I.budget)


def krull_dimension(I: Ideal):
    """Krull dimension via maximal independent sets of the leading-term ideal.

    Returns ``EMPTY`` (negative infinity) for the unit ideal.
    """
    n = I.ring.nvars
    if I.is_zero():
        return n
    gb = I.groebner_basis()
    if len(gb) == 1 and gb[0].is_constant():
        return EMPTY
    order = MonomialOrder.degrevlex()
    supports = []
    for g in gb:
        lm = g.leading_monomial(order)
        mask = 0
        for i, x in enumerate(lm):
            if x:
                mask |= 1 << i
        supports.append(mask)
    # minimal supports only
    supports = sorted(set(supports), key=lambda m: bin(m).count("1"))
    minimal = []
    for s in supports:
        if not any((m & s) == m for m in minimal):
            minimal.append(s)
    best = 0

    # branch: every leading monomial support must meet the complement of S
    def search(i: int, chosen: int, size: int):
        nonlocal best
        if size + (n - i) <= best:
            return
        if i == n:
            best = size
            return
        with_i = chosen | (1 << i)
        if not any((m & with_i) == m for m in minimal):
            search(i + 1, with_i, size + 1)
        search(i + 1, chosen, size)

    search(0, 0, 0)
    return best


def kernel_of_ring_map(images: Sequence[MultiPolynomial], ring: PolyRing | None = None, budget: Budget | None = None) -> Ideal:
    """Kernel of K[T1..Ts] -> K[S], T_i -> images[i], by graph-ideal elimination."""
    s = len(images)
    if s == 0:
        raise ValueError("need at least one image")
    src = images[0].ring
    k = src.nvars
    order = max(g.ring.order for g in images)
    if ring is None:
        ring = PolyRing(s, order)
    big = PolyRing(s + k, order, list(ring.names) + [f"_S{i + 1}" for i in range(k)])
    gens = []
    for i, g in enumerate(images):
        gens.append(big.variable(i) - g.to_ring(big, [s + j for j in range(k)]))
    J = Ideal(big, gens, budget)
    if all(g.is_homogeneous() for g in images):
        J.grading = [max(g.total_degree(), 1) for g in images] + [1] * k
    E = eliminate(J, range(s, s + k))
    out = [MultiPolynomial(ring, {e[:s]: c for e, c in g.terms.items()}) for g in E.generators]
    return Ideal(ring, out, budget)


def _weight_shift(w) -> list:
    m = min(w)
    return [x - m for x in w]


def initial_form_ideal(I: Ideal, w: Sequence[int]) -> Ideal:
    """Ideal of w-initial forms, keeping terms of maximal weight w.e.

    Homogeneous ideals use a weight order directly (shifted to nonnegative
    weights, which leaves initial forms unchanged); other ideals are
    homogenized with an extra variable of weight zero and dehomogenized after.
    """
    w = [Fraction(x) for x in w]
    n = I.ring.nvars
    if len(w) != n:
        raise ValueError("weight vector length differs from variable count")
    if I.is_zero():
        return I
    if len(I.generators) == 1:
        return Ideal(I.ring, [_initial_form(I.generators[0], w)], I.budget)
    if I.is_homogeneous():
        order = MonomialOrder.weight(_weight_shift(w))
        gb = I.groebner_basis(order)
        return Ideal(I.ring, [_initial_form(g, w) for g in gb], I.budget)
    big = I.ring.extend(1, names=["_h"])
    hom = []
    for g in I.generators:
        d = g.total_degree()
        hom.append(MultiPolynomial(big, {e + (d - sum(e),): c for e, c in g.terms.items()}))
    J = Ideal(big, hom, I.budget)
    ww = _weight_shift(w + [Fraction(0)])
    # the shift moves the homogenizing weight too; homogeneity keeps forms intact
    gb = J.groebner_basis(MonomialOrder.weight(ww))
    forms = []
    for g in gb:
        f = _initial_form(g, w + [Fraction(0)])
        forms.append(MultiPolynomial(I.ring, _dehom(f.terms, n)))
    return Ideal(I.ring, forms, I.budget)


def _dehom(terms: dict, n: int) -> dict:
    out: dict = {}
    for e, c in terms.items():
        k = e[:n]
        v = out.get(k)
        out[k] = c if v is None else v + c
    return {e: c for e, c in out.items() if c}


def _initial_form(f: MultiPolynomial, w) -> MultiPolynomial:
    best = None
    out = {}
    for e, c in f.terms.items():
        val = sum(a * b for a, b in zip(w, e))
        if best is None or val > best:
            best, out = val, {e: c}
        elif val == best:
            out[e] = c
    return MultiPolynomial(f.ring, out)


def contains_monomial(I: Ideal) -> bool:
    """True iff I contains a monomial, i.e. I : (T1...Tn)^infinity is the unit ideal."""
    if I.is_zero():
        return False
    return unit_after_saturation(I, list(range(I.ring.nvars)))


def unit_after_saturation(I: Ideal, variables: Sequence[int]) -> bool:
    """Whether I : (prod of the given variables)^infinity is the unit ideal.

    Decided by a single degrevlex basis of I + <y*prod - 1>; no elimination
    order is needed since only membership of 1 matters.
    """
    if I.is_zero():
        return False
    n = I.ring.nvars
    big = I.ring.extend(1, names=["_y"])
    prod = big.one()
    for i in variables:
        prod = prod * big.variable(i)
    gens = [g.to_ring(big) for g in I.generators]
    gens.append(big.variable(n) * prod - 1)
    return _one_in(gens, big, I.budget)


def _det(m: list) -> MultiPolynomial:
    k = len(m)
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(k):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0].ring.zero()


def jacobian_minor_ideal(I: Ideal, c: int, generators: Sequence[MultiPolynomial] | None = None) -> Ideal:
    """I together with all c x c minors of the Jacobian of its generators."""
    gens = list(generators) if generators is not None else list(I.generators)
    n = I.ring.nvars
    if c < 1 or c > min(len(gens), n):
        raise ValueError(f"minor size {c} out of range for {len(gens)} generators in {n} variables")
    jac = [[g.diff(j) for j in range(n)] for g in gens]
    minors = []
    seen = set()
    for rows in itertools.combinations(range(len(gens)), c):
        for cols in itertools.combinations(range(n), c):
            sub = [[jac[r][q] for q in cols] for r in rows]
            if any(all(x.is_zero() for x in row) for row in sub):
                continue
            d = _det(sub)
            if not d.is_zero() and d not in seen:
                seen.add(d)
                minors.append(d)
    return Ideal(I.ring, list(I.generators) + minors, I.budget)
