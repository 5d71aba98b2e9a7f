"""Compare polynomials and ideals up to renaming and rescaling of variables.

Two polynomials ``f, g`` in ``T1..Ts`` are *torus-equivalent* when some
permutation ``pi`` and nonzero scalars ``r_i, c`` satisfy
``g(T) = c * f(r_1 T_pi(1), ..., r_s T_pi(s))``. Reference relations are only
determined up to this equivalence, so golden comparisons go through here.
"""

from __future__ import annotations

from typing import Sequence

from .cyclotomic import as_scalar
from .lattice import integer_kernel
from .polynomials import MultiPolynomial

__all__ = ["support_permutations", "torus_consistent", "equivalent_up_to_torus", "ideals_equivalent_up_to_torus", "exponent_pattern"]


def _permute(e: tuple, perm: Sequence[int]) -> tuple:
    # variable i of f becomes variable perm[i] of g
    out = [0] * len(e)
    for i, x in enumerate(e):
        out[perm[i]] = x
    return tuple(out)


def support_permutations(f_supp, g_supp, n: int):
    """Permutations ``perm`` with ``{permute(e) : e in f_supp} == g_supp``.

    Backtracking over variables; a partial assignment is kept only while the
    column multisets of already placed variables agree.
    """
    f_supp = sorted(f_supp)
    g_set = set(map(tuple, g_supp))
    if len(f_supp) != len(g_set):
        return
    fcol = [sorted(e[i] for e in f_supp) for i in range(n)]
    gcol = [sorted(e[j] for e in g_set) for j in range(n)]
    perm = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            if {_permute(e, perm) for e in f_supp} == g_set:
                yield tuple(perm)
            return
        for j in range(n):
            if not used[j] and fcol[i] == gcol[j]:
                perm[i] = j
                used[j] = True
                yield from rec(i + 1)
                used[j] = False
        perm[i] = -1

    yield from rec(0)


def torus_consistent(exps: Sequence[tuple], ratios: Sequence) -> bool:
    """True iff ``ratios[k] = c * prod r^exps[k]`` is solvable over C.

    Solvable exactly when ``prod ratios^k = 1`` for every integer relation
    ``k`` among the columns ``(e, 1)``; C* is divisible, so no other
    obstruction exists.
    """
    return _lattice_consistent([tuple(e) + (1,) for e in exps], ratios)


def _lattice_consistent(cols, ratios) -> bool:
    if not cols:
        return True
    rows = [[c[i] for c in cols] for i in range(len(cols[0]))]
    for rel in integer_kernel(rows, len(cols)):
        acc = as_scalar(1)
        for r, k in zip(ratios, rel):
            if k:
                acc = as_scalar(acc * r ** k)
        if acc != 1:
            return False
    return True


def equivalent_up_to_torus(f: MultiPolynomial, g: MultiPolynomial) -> tuple | None:
    """A permutation witnessing torus-equivalence of ``f`` and ``g``, else None."""
    if f.nvars != g.nvars:
        return None
    n = f.nvars
    if f.is_zero() or g.is_zero():
        return tuple(range(n)) if f.is_zero() and g.is_zero() else None
    for perm in support_permutations(f.support(), g.support(), n):
        exps = sorted(f.support())
        ratios = [as_scalar(g.coefficient(_permute(e, perm)) / f.coefficient(e)) for e in exps]
        if torus_consistent([_permute(e, perm) for e in exps], ratios):
            return perm
    return None


def ideals_equivalent_up_to_torus(fs: Sequence[MultiPolynomial], gs: Sequence[MultiPolynomial]) -> tuple | None:
    """Common permutation matching generator lists (as sets) up to one torus rescaling.

    Generators are matched by support; the scalars of all generators must come
    from one common ``r`` (one free constant per generator).
    """
    fs, gs = list(fs), list(gs)
    if len(fs) != len(gs):
        return None
    if not fs:
        return ()
    n = fs[0].nvars
    fsupp = [frozenset(f.support()) for f in fs]
    gsupp = [frozenset(g.support()) for g in gs]
    all_f = set().union(*fsupp)
    all_g = set().union(*gsupp)
    for perm in support_permutations(all_f, all_g, n):
        mapped = [frozenset(_permute(e, perm) for e in s) for s in fsupp]
        if sorted(mapped, key=sorted) != sorted(gsupp, key=sorted):
            continue
        # one constant per generator: add an indicator coordinate per generator
        exps, ratios = [], []
        for a, f in enumerate(fs):
            b = gsupp.index(mapped[a])
            for e in sorted(f.support()):
                pe = _permute(e, perm)
                tag = tuple(int(k == a) for k in range(len(fs)))
                exps.append(pe + tag)
                ratios.append(as_scalar(gs[b].coefficient(pe) / f.coefficient(e)))
        if _lattice_consistent(exps, ratios):
            return perm
    return None


def exponent_pattern(f: MultiPolynomial) -> tuple:
    """Permutation-invariant summary: sorted multiset of sorted exponent tuples."""
    return tuple(sorted(tuple(sorted(e, reverse=True)) for e in f.support()))
