"""Exact double description for rational polyhedral cones.

All vectors are integer tuples; every produced vector is divided by the gcd of
its entries.  The conversion direction implemented here is H -> V: given
inequalities a.x >= 0 and equations b.x = 0, return the extreme rays and a
basis of the lineality space.  V -> H is obtained by dualizing.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vector = tuple


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _canon_line(v) -> tuple:
    v = primitive(v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def integer_vector(v) -> tuple:
    """Scale a rational vector to a primitive integer vector in the same ray."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive(tuple(int(Fraction(x) * den) for x in v))


def rank(rows) -> int:
    return len(row_echelon(rows))


def row_echelon(rows) -> list[list[Fraction]]:
    """Fraction row echelon form (nonzero rows only)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out = []
    for c in range(ncols):
        piv = None
        for i, r in enumerate(m):
            if r[c] != 0:
                piv = i
                break
        if piv is None:
            continue
        p = m.pop(piv)
        inv = 1 / p[c]
        p = [x * inv for x in p]
        for r in m:
            f = r[c]
            if f:
                for k in range(c, ncols):
                    r[k] -= f * p[k]
        out.append(p)
    return out


def nullspace(rows, ncols: int) -> list[tuple]:
    """Integer basis (primitive vectors) of {x : r.x = 0 for all rows}."""
    ech = row_echelon(rows) if rows else []
    pivots = []
    for r in ech:
        for c, x in enumerate(r):
            if x != 0:
                pivots.append(c)
                break
    # back substitution to reduced form
    red = [list(r) for r in ech]
    for i in range(len(red) - 1, -1, -1):
        pc = pivots[i]
        for j in range(i):
            f = red[j][pc]
            if f:
                red[j] = [a - f * b for a, b in zip(red[j], red[i])]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fcol]
        basis.append(integer_vector(v))
    return basis


def h_to_v(inequalities, equations, dim: int):
    """Extreme rays and lineality basis of {x : A x >= 0, B x = 0}.

    Returns (rays, lineality) with rays primitive and orthogonal-projected so
    that the decomposition cone = lineality + cone(rays) holds.
    """
    constraints = [tuple(a) for a in inequalities]
    for b in equations:
        constraints.append(tuple(b))
        constraints.append(tuple(-x for x in b))
    lineality: list[tuple] = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple] = []
    zeros: list[frozenset] = []  # indices of constraints tight at each ray
    processed: list[tuple] = []
    for idx, a in enumerate(constraints):
        # 1. if some lineality direction is not annihilated, pivot on it
        piv = None
        for i, l in enumerate(lineality):
            if dot(a, l) != 0:
                piv = i
                break
        if piv is not None:
            l0 = lineality.pop(piv)
            s0 = dot(a, l0)
            if s0 < 0:
                l0 = tuple(-x for x in l0)
                s0 = -s0
            new_lin = []
            for l in lineality:
                s = dot(a, l)
                if s:
                    l = primitive(tuple(s0 * x - s * y for x, y in zip(l, l0)))
                new_lin.append(l)
            lineality = new_lin
            new_rays = []
            for r in rays:
                s = dot(a, r)
                if s:
                    r = primitive(tuple(s0 * x - s * y for x, y in zip(r, l0)))
                new_rays.append(r)
            rays = new_rays
            zeros = [z | {idx} for z in zeros]
            rays.append(l0)
            zeros.append(frozenset(range(idx)) - _tight_removed(processed, l0))
            processed.append(a)
            continue
        # 2. ordinary double description step
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | {idx} for i in zer]
        if neg:
            for p in pos:
                for n in neg:
                    common = zeros[p] & zeros[n]
                    adjacent = True
                    for k in range(len(rays)):
                        if k != p and k != n and common <= zeros[k]:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    vp, vn = vals[p], vals[n]
                    r = primitive(tuple(vp * y - vn * x for x, y in zip(rays[p], rays[n])))
                    new_rays.append(r)
                    new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros
        processed.append(a)
    # lineality vectors canonical up to sign
    lineality = [_canon_line(l) for l in lineality]
    # deduplicate rays
    seen = {}
    for r in rays:
        if any(r):
            seen.setdefault(r, None)
    return list(seen), lineality


def _tight_removed(processed, vec) -> frozenset:
    return frozenset(i for i, a in enumerate(processed) if dot(a, vec) != 0)


def v_to_h(generators, dim: int, lineality=()):
    """Facet inner normals and equations of cone(generators) + lineality.

    Returns (facets, equations): cone = {x : F x >= 0, E x = 0}.
    """
    ineqs = [tuple(g) for g in generators]
    eqs = [tuple(l) for l in lineality]
    facets, eqbasis = h_to_v(ineqs, eqs, dim)
    return facets, eqbasis
