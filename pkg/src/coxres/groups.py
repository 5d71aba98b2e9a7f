"""Finite matrix groups over cyclotomic fields.

Elements are square matrices stored as tuples of row tuples with canonical
scalars (``Fraction`` for rationals), so they hash and compare exactly.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .cyclotomic import as_scalar, cyclotomic_field, lcm, root_of_unity, scalar_order
from .lattice import AbelianGroupSpec, smith_normal_form

__all__ = [
    "MatrixGroup",
    "GroupTooLarge",
    "matrix_rank",
    "determinant",
    "age",
]

Matrix = tuple


class GroupTooLarge(RuntimeError):
    """Closure exceeded the configured order cap: not finite within budget."""


def _canon(m) -> Matrix:
    return tuple(tuple(as_scalar(x) for x in row) for row in m)


def _mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        r = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = s + x * y
            r.append(as_scalar(s))
        out.append(tuple(r))
    return tuple(out)


def _identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def _key(m: Matrix):
    # scalar equality and hashing are field-independent, so the matrix is its own key
    return m


def matrix_rank(rows) -> int:
    """Rank over a cyclotomic field (exact Gaussian elimination)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    rk = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][c]
        for i in range(rk + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [as_scalar(x - f * y) for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


def determinant(rows):
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [as_scalar(x - f * y) for x, y in zip(m[i], m[c])]
    return as_scalar(det)


class MatrixGroup:
    """The finite group generated by ``generators``.

    The closure is computed lazily by breadth-first multiplication with the
    generators, so element order is deterministic.
    """

    def __init__(self, generators: Iterable[Sequence[Sequence]], max_order: int = 10000, name: str | None = None):
        gens = [_canon(g) for g in generators]
        if not gens:
            raise ValueError("need at least one generator")
        n = len(gens[0])
        for g in gens:
            if len(g) != n or any(len(row) != n for row in g):
                raise ValueError("generators must be square matrices of one size")
        self.degree = n
        self.generators = tuple(gens)
        self.max_order = max_order
        self.name = name
        order = 1
        for g in gens:
            for row in g:
                for x in row:
                    order = lcm(order, scalar_order(x))
        self.entry_field_order = order

    def __repr__(self) -> str:
        return f"MatrixGroup({self.name or 'unnamed'}, degree={self.degree}, gens={len(self.generators)})"

    # -- closure ------------------------------------------------------------------
    @cached_property
    def _closure(self):
        one = _identity(self.degree)
        elems = [one]
        index = {_key(one): 0}
        queue = deque([one])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = _mul(g, s)
                k = _key(h)
                if k not in index:
                    index[k] = len(elems)
                    elems.append(h)
                    if len(elems) > self.max_order:
                        raise GroupTooLarge(f"group order exceeds {self.max_order}: not finite within budget")
                    queue.append(h)
        return elems, index

    @property
    def elements(self) -> list[Matrix]:
        return list(self._closure[0])

    @property
    def order(self) -> int:
        return len(self._closure[0])

    def __len__(self) -> int:
        return self.order

    def identity(self) -> Matrix:
        return _identity(self.degree)

    def index_of(self, g) -> int:
        return self._closure[1][_key(_canon(g))]

    def __contains__(self, g) -> bool:
        return _key(_canon(g)) in self._closure[1]

    def mul(self, a, b) -> Matrix:
        return _mul(a, b)

    def element_order(self, g) -> int:
        one = _identity(self.degree)
        k, h = 1, g
        while h != one:
            h = _mul(h, g)
            k += 1
            if k > self.max_order:
                raise GroupTooLarge("element of infinite order")
        return k

    def inverse(self, g) -> Matrix:
        r = self.element_order(g)
        h = _identity(self.degree)
        for _ in range(r - 1):
            h = _mul(h, g)
        return h

    @cached_property
    def _orders(self) -> list[int]:
        return [self.element_order(g) for g in self.elements]

    def exponent(self) -> int:
        e = 1
        for r in self._orders:
            e = lcm(e, r)
        return e

    @cached_property
    def field_order(self) -> int:
        """Order of a cyclotomic field holding all entries and eigenvalues."""
        return lcm(self.entry_field_order, self.exponent())

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(_mul(a, b) == _mul(b, a) for a in gs for b in gs)

    def is_special_linear(self) -> bool:
        return all(determinant(g) == 1 for g in self.generators)

    # -- subgroups -----------------------------------------------------------------
    def derived_subgroup(self) -> "MatrixGroup":
        """Normal closure of the commutators of generator pairs."""
        gens = self.generators
        comms = []
        seen = set()
        one = _identity(self.degree)
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                c = _mul(_mul(a, b), _mul(self.inverse(a), self.inverse(b)))
                if c != one and _key(c) not in seen:
                    seen.add(_key(c))
                    comms.append(c)
        if not comms:
            return MatrixGroup([one], self.max_order, name=f"[{self.name}]'" if self.name else None)
        inverses = [self.inverse(g) for g in gens]
        while True:
            h = MatrixGroup(comms, self.max_order)
            members = h._closure[1]
            added = False
            for c in list(comms):
                for g, gi in zip(gens, inverses):
                    conj = _mul(_mul(g, c), gi)
                    if _key(conj) not in members:
                        comms.append(conj)
                        added = True
                        break
                if added:
                    break
            if not added:
                h.name = f"[{self.name},{self.name}]" if self.name else None
                return h

    def has_pseudo_reflections(self) -> bool:
        one = _identity(self.degree)
        for g in self.elements:
            if g == one:
                continue
            diff = [[as_scalar(x - (1 if i == j else 0)) for j, x in enumerate(row)] for i, row in enumerate(g)]
            if matrix_rank(diff) == 1:
                return True
        return False

    def pseudo_reflections(self) -> list[Matrix]:
        one = _identity(self.degree)
        out = []
        for g in self.elements:
            if g == one:
                continue
            diff = [[as_scalar(x - (1 if i == j else 0)) for j, x in enumerate(row)] for i, row in enumerate(g)]
            if matrix_rank(diff) == 1:
                out.append(g)
        return out

    # -- abelianization ------------------------------------------------------------
    @cached_property
    def _labels(self) -> list[tuple]:
        """Exponent vectors in the generators reaching each element along the BFS tree."""
        elems, index = self._closure
        k = len(self.generators)
        labels: list = [None] * len(elems)
        labels[0] = (0,) * k
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j, s in enumerate(self.generators):
                t = index[_key(_mul(elems[i], s))]
                if labels[t] is None:
                    lab = list(labels[i])
                    lab[j] += 1
                    labels[t] = tuple(lab)
                    queue.append(t)
        return labels

    @cached_property
    def _abelianization(self):
        elems, index = self._closure
        labels = self._labels
        k = len(self.generators)
        rels = set()
        for i, g in enumerate(elems):
            for j, s in enumerate(self.generators):
                t = index[_key(_mul(g, s))]
                r = [a - b for a, b in zip(labels[i], labels[t])]
                r[j] += 1
                if any(r):
                    rels.add(tuple(r))
        rels = sorted(rels)
        if not rels:
            return AbelianGroupSpec(k), [], None
        d, _, v = smith_normal_form([list(r) for r in rels])
        diag = [d[i][i] if i < len(d) else 0 for i in range(k)]
        keep = [i for i in range(k) if diag[i] != 1]
        moduli = [diag[i] for i in keep]
        if any(m == 0 for m in moduli):
            raise ValueError("abelianization of a finite group cannot be infinite")
        spec = AbelianGroupSpec(0, tuple(moduli))
        return spec, keep, v

    def abelianization(self):
        """(spec, project) for G/[G,G]; ``project`` maps an element to its coordinates."""
        spec, keep, v = self._abelianization
        if v is None:
            return spec, (lambda g: ())
        index = self._closure[1]
        labels = self._labels
        moduli = spec.torsion

        def project(g):
            lab = labels[index[_key(_canon(g))]]
            y = [sum(lab[i] * v[i][j] for i in range(len(lab))) for j in range(len(lab))]
            return tuple(y[j] % m for j, m in zip(keep, moduli))

        return spec, project

    # -- classes and ages ------------------------------------------------------------
    def conjugacy_classes(self) -> list[list[Matrix]]:
        elems, index = self._closure
        inverses = [self.inverse(g) for g in self.generators]
        seen = [False] * len(elems)
        classes = []
        for i, g in enumerate(elems):
            if seen[i]:
                continue
            cls = [g]
            seen[i] = True
            queue = deque([g])
            while queue:
                h = queue.popleft()
                for s, si in zip(self.generators, inverses):
                    c = _mul(_mul(si, h), s)
                    t = index[_key(c)]
                    if not seen[t]:
                        seen[t] = True
                        cls.append(c)
                        queue.append(c)
            classes.append(cls)
        return classes

    def eigenvalue_exponents(self, g) -> tuple[int, list[int]]:
        """(r, [a_1..a_n]) with eigenvalues zeta_r^{a_k}, r the element order."""
        r = self.element_order(g)
        n = self.degree
        field = cyclotomic_field(lcm(self.entry_field_order, r))
        out = []
        for a in range(r):
            z = field.convert(root_of_unity(r, a)) if r > 1 else Fraction(1)
            diff = [[as_scalar(field.convert(x) - (z if i == j else 0)) for j, x in enumerate(row)] for i, row in enumerate(g)]
            mult = n - matrix_rank(diff)
            out.extend([a] * mult)
        if len(out) != n:
            raise ArithmeticError("element is not diagonalizable over roots of unity")
        return r, out

    def age(self, g) -> Fraction:
        r, exps = self.eigenvalue_exponents(g)
        return Fraction(sum(exps), r)

    def junior_classes(self) -> int:
        return sum(1 for cls in self.conjugacy_classes() if self.age(cls[0]) == 1)

    def age_table(self) -> list[dict]:
        rows = []
        for cls in self.conjugacy_classes():
            g = cls[0]
            r, exps = self.eigenvalue_exponents(g)
            rows.append({"size": len(cls), "order": r, "eigenvalue_exponents": exps, "age": Fraction(sum(exps), r)})
        return rows


def age(g, group: MatrixGroup | None = None) -> Fraction:
    """Age of a finite-order matrix g."""
    grp = group or MatrixGroup([g])
    return grp.age(_canon(g))
