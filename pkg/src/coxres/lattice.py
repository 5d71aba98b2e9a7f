"""Exact integer linear algebra on lists of rows.

Hermite and Smith normal forms with transforms, kernels of integer maps and
of maps modulo moduli, Gale duals for finite and free class groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

__all__ = [
    "AbelianGroupSpec",
    "hermite_normal_form",
    "smith_normal_form",
    "integer_kernel",
    "finite_gale_dual",
    "cokernel_gale",
    "primitive",
    "canonical_direction",
    "determinant",
    "rational_inverse",
    "mat_mul",
    "mat_vec",
    "transpose",
    "identity",
    "lattice_equal",
    "in_row_lattice",
]

IntMatrix = list  # list of rows of ints


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a) -> list[list[int]]:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a, b) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _xgcd(a: int, b: int):
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Z^free_rank + Z/n_1 + ... + Z/n_k with n_1 | n_2 | ... (all n_i >= 2)."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"torsion moduli {t} do not form a divisibility chain")
        if any(x < 2 for x in t):
            raise ValueError("torsion moduli must be at least 2")
        object.__setattr__(self, "torsion", t)

    @property
    def order(self):
        """Group order; None when infinite."""
        return None if self.free_rank else prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self) -> str:
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{n}" for n in self.torsion]
        return " + ".join(parts) if parts else "0"

    @classmethod
    def from_invariants(cls, diag: Sequence[int], ncols: int) -> "AbelianGroupSpec":
        """Cokernel of a map with the given SNF diagonal into Z^ncols."""
        nz = [abs(d) for d in diag if d]
        return cls(ncols - len(nz), tuple(d for d in nz if d > 1))

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def hermite_normal_form(a) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style HNF: returns (H, U) with U unimodular and U*A = H.

    H is in row echelon form, pivots positive, entries above each pivot
    reduced into [0, pivot).  Zero rows are kept at the bottom.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(map(int, row)) for row in a]
    u = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        # gather gcd of column c (rows r..) into row r
        for i in range(r + 1, m):
            if h[i][c]:
                g, x, y = _xgcd(h[r][c], h[i][c])
                p, q = h[r][c] // g, h[i][c] // g
                hr, hi = h[r], h[i]
                h[r] = [x * s + y * t for s, t in zip(hr, hi)]
                h[i] = [-q * s + p * t for s, t in zip(hr, hi)]
                ur, ui = u[r], u[i]
                u[r] = [x * s + y * t for s, t in zip(ur, ui)]
                u[i] = [-q * s + p * t for s, t in zip(ur, ui)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-s for s in h[r]]
            u[r] = [-s for s in u[r]]
        piv = h[r][c]
        for i in range(r):
            f = h[i][c] // piv
            if f:
                h[i] = [s - f * t for s, t in zip(h[i], h[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        r += 1
    return h, u


def smith_normal_form(a) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Returns (D, U, V) with U*A*V = D diagonal, d_1 | d_2 | ..., d_i >= 0."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def row_op(i, j, x, y, p, q):
        # (row_i, row_j) <- (x*row_i + y*row_j, p*row_i + q*row_j) on d and u
        for mat in (d, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [x * s + y * t for s, t in zip(ri, rj)]
            mat[j] = [p * s + q * t for s, t in zip(ri, rj)]

    def col_op(i, j, x, y, p, q):
        for mat, rows in ((d, m), (v, n)):
            for k in range(rows):
                s, t = mat[k][i], mat[k][j]
                mat[k][i] = x * s + y * t
                mat[k][j] = p * s + q * t

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            d[i], d[t] = d[t], d[i]
            u[i], u[t] = u[t], u[i]
        if j != t:
            for mat, rows in ((d, m), (v, n)):
                for k in range(rows):
                    mat[k][j], mat[k][t] = mat[k][t], mat[k][j]
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    if d[i][t] % d[t][t] == 0:
                        row_op(t, i, 1, 0, -(d[i][t] // d[t][t]), 1)
                        continue
                    g, x, y = _xgcd(d[t][t], d[i][t])
                    p, q = d[t][t] // g, d[i][t] // g
                    row_op(t, i, x, y, -q, p)
            for j in range(t + 1, n):
                if d[t][j]:
                    if d[t][j] % d[t][t] == 0:
                        col_op(t, j, 1, 0, -(d[t][j] // d[t][t]), 1)
                        continue
                    g, x, y = _xgcd(d[t][t], d[t][j])
                    p, q = d[t][t] // g, d[t][j] // g
                    col_op(t, j, x, y, -q, p)
                    done = False
            if any(d[i][t] for i in range(t + 1, m)):
                done = False
                continue
            # divisibility: fold an offending row into row t
            piv = d[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                row_op(t, bad, 1, 1, 0, 1)
                done = False
        if d[t][t] < 0:
            d[t] = [-s for s in d[t]]
            u[t] = [-s for s in u[t]]
        t += 1
    return d, u, v


def integer_kernel(a, ncols: int | None = None) -> list[list[int]]:
    """Z-basis (rows, HNF) of {x in Z^n : A x = 0}."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return identity(ncols)
    h, u = hermite_normal_form(transpose(a))
    basis = [u[i] for i in range(ncols) if not any(h[i])]
    if not basis:
        return []
    hb, _ = hermite_normal_form(basis)
    return [row for row in hb if any(row)]


def finite_gale_dual(q0, moduli: Sequence[int]) -> list[list[int]]:
    """Square matrix whose rows are the HNF basis of {v : Q0 v = 0 mod moduli}.

    ``q0`` has one row per modulus.  The columns of the result generate the
    cone sigma of the canonical toric ambient variety.
    """
    moduli = [int(x) for x in moduli]
    k = len(moduli)
    q0 = [list(map(int, r)) for r in q0]
    if len(q0) != k:
        raise ValueError("degree matrix needs one row per modulus")
    if k == 0:
        if q0:
            raise ValueError("degree matrix without moduli")
        raise ValueError("cannot infer variable count from an empty degree matrix; use identity")
    s = len(q0[0])
    # columns of Q0 must generate the torsion group
    aug = [row + [moduli[i] if j == i else 0 for j in range(k)] for i, row in enumerate(q0)]
    dg, _, _ = smith_normal_form(aug)
    diag = [dg[i][i] for i in range(min(k, s + k))]
    if any(abs(x) != 1 for x in diag):
        raise ValueError("degree matrix columns do not generate the class group")
    ker = integer_kernel(aug, s + k)
    gens = [row[:s] for row in ker]
    h, _ = hermite_normal_form(gens)
    p0 = [row for row in h if any(row)]
    if len(p0) != s:
        raise AssertionError("kernel lattice has wrong rank")
    return p0


def finite_gale_dual_trivial(s: int) -> list[list[int]]:
    return identity(s)


def cokernel_gale(p) -> tuple[list[list[int]], AbelianGroupSpec, list[int]]:
    """Presentation of Z^r / (row space of P) for an n x r matrix P.

    Returns (Q, spec, moduli_per_row): rows of Q map Z^r onto the abstract
    group, free rows first (HNF-normalized) then torsion rows taken modulo
    the listed moduli.  Q_free * P^T = 0 exactly.
    """
    p = [list(map(int, r)) for r in p]
    r = len(p[0]) if p else 0
    if not p:
        return identity(r), AbelianGroupSpec(r), [0] * r
    at = transpose(p)  # r x n
    d, u, _ = smith_normal_form(at)
    n = len(p)
    diag = [d[i][i] if i < n else 0 for i in range(r)]
    free_rows = [u[i] for i in range(r) if diag[i] == 0]
    tors = [(u[i], diag[i]) for i in range(r) if diag[i] > 1]
    if free_rows:
        hf, _ = hermite_normal_form(free_rows)
        free_rows = [row for row in hf if any(row)]
    tors_rows = [[x % mod for x in row] for row, mod in tors]
    spec = AbelianGroupSpec(len(free_rows), tuple(mod for _, mod in tors))
    q = free_rows + tors_rows
    return q, spec, [0] * len(free_rows) + [mod for _, mod in tors]


def primitive(v: Sequence[int]) -> tuple:
    """v divided by the gcd of its entries (sign kept)."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(int(x) // g for x in v)


def canonical_direction(v: Sequence[int]) -> tuple[tuple, int]:
    """(primitive vector with first nonzero entry positive, orientation sign)."""
    w = primitive(v)
    for x in w:
        if x:
            if x < 0:
                return tuple(-y for y in w), -1
            return w, 1
    raise ValueError("zero vector")


def determinant(a) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def rational_inverse(a) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def in_row_lattice(v: Sequence[int], basis) -> bool:
    """Is v an integer combination of the rows of ``basis``?"""
    if not basis:
        return not any(v)
    h, _ = hermite_normal_form(basis)
    rows = [r for r in h if any(r)]
    rem = list(v)
    for row in rows:
        c = next(j for j, x in enumerate(row) if x)
        if rem[c] % row[c]:
            return False
        f = rem[c] // row[c]
        rem = [x - f * y for x, y in zip(rem, row)]
    return not any(rem)


def lattice_equal(a, b) -> bool:
    """Do the row lattices of a and b coincide?"""
    ha = [r for r in hermite_normal_form(a)[0] if any(r)] if a else []
    hb = [r for r in hermite_normal_form(b)[0] if any(r)] if b else []
    return ha == hb
