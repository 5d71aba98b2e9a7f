"""Sparse multivariate polynomials over Q and cyclotomic fields.

A polynomial is a dict mapping exponent tuples to nonzero coefficients.  Over a
rational ring coefficients are ``Fraction``; over Q(zeta_n) they may be
``CyclotomicNumber``.  The module also carries the polytope-based
irreducibility test used to certify that a generator is a prime element.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from . import _dd
from .cyclotomic import CyclotomicField, CyclotomicNumber, as_scalar, cyclotomic_field, root_of_unity

__all__ = [
    "MonomialOrder",
    "PolyRing",
    "MultiPolynomial",
    "LatticePolytope",
    "newton_polytope",
    "is_integrally_indecomposable",
    "irreducibility_certificate",
    "Irreducible",
    "Reducible",
    "Unverified",
    "UnsupportedDimension",
    "substitute_monomial_map",
]

Exponent = tuple


# ---------------------------------------------------------------------------
# monomial orders


def _degrevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


class MonomialOrder:
    """A monomial order given by a sort key; larger key means larger monomial.

    Keys are flat tuples of numbers, so negating them entrywise reverses the
    order (the reducer relies on this to drive a min-heap).

    Build instances with the class methods ``lex``, ``degrevlex``,
    ``elimination`` and ``weight``.
    """

    def __init__(self, name: str, key: Callable, params=None):
        self.name = name
        self.key = key
        self.params = params

    def __repr__(self) -> str:
        return f"MonomialOrder({self.name}{'' if self.params is None else ', ' + repr(self.params)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and (self.name, self.params) == (other.name, other.params)

    def __hash__(self) -> int:
        return hash((self.name, self.params))

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex", tuple)

    @classmethod
    def degrevlex(cls) -> "MonomialOrder":
        return cls("degrevlex", _degrevlex_key)

    @classmethod
    def elimination(cls, block: Iterable[int]) -> "MonomialOrder":
        """Block order: any monomial involving ``block`` beats every monomial free of it.

        Within equal block degree, ties are broken by degrevlex.
        """
        blk = tuple(sorted(set(block)))

        def key(e):
            return (sum(e[i] for i in blk),) + _degrevlex_key(e)

        return cls("elimination", key, blk)

    @classmethod
    def weight(cls, w: Sequence, tie: "MonomialOrder | None" = None) -> "MonomialOrder":
        """Order by the weight w.e, ties broken by ``tie`` (degrevlex default)."""
        w = tuple(Fraction(x) for x in w)
        tie = tie or cls.degrevlex()
        tk = tie.key

        def key(e):
            return (sum(a * b for a, b in zip(w, e)),) + tk(e)

        return cls("weight", key, (w, tie.name, tie.params))

    def max(self, exps):
        return max(exps, key=self.key)

    def sorted(self, exps, reverse: bool = True):
        return sorted(exps, key=self.key, reverse=reverse)


# ---------------------------------------------------------------------------
# rings


class PolyRing:
    """Polynomial ring K[T1, ..., Tn] with K = Q(zeta_order).

    >>> R = PolyRing(2)
    >>> x, y = R.gens
    >>> str((x + y) ** 2)
    'T1^2 + 2*T1*T2 + T2^2'
    """

    def __init__(self, nvars: int, order: int = 1, names: Sequence[str] | None = None):
        if names is None:
            names = [f"T{i + 1}" for i in range(nvars)]
        if len(names) != nvars:
            raise ValueError("need one name per variable")
        self.nvars = nvars
        self.field: CyclotomicField = cyclotomic_field(order)
        self.names = tuple(names)

    @property
    def order(self) -> int:
        return self.field.order

    def __repr__(self) -> str:
        return f"PolyRing({self.nvars}, {self.field!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and other.nvars == self.nvars
            and other.field == self.field
            and other.names == self.names
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.field.order, self.names))

    # -- constructors -----------------------------------------------------
    def zero(self) -> "MultiPolynomial":
        return MultiPolynomial(self, {})

    def one(self) -> "MultiPolynomial":
        return self.constant(1)

    def constant(self, c) -> "MultiPolynomial":
        c = as_scalar(c)
        if not c:
            return self.zero()
        return MultiPolynomial(self, {(0,) * self.nvars: c})

    def variable(self, i: int) -> "MultiPolynomial":
        e = [0] * self.nvars
        e[i] = 1
        return MultiPolynomial(self, {tuple(e): Fraction(1)})

    @property
    def gens(self) -> list["MultiPolynomial"]:
        return [self.variable(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1) -> "MultiPolynomial":
        exp = tuple(int(x) for x in exp)
        if len(exp) != self.nvars or min(exp, default=0) < 0:
            raise ValueError(f"bad exponent {exp} for {self!r}")
        c = as_scalar(coeff)
        return MultiPolynomial(self, {exp: c} if c else {})

    def from_dict(self, terms: dict) -> "MultiPolynomial":
        out = {}
        for e, c in terms.items():
            c = as_scalar(c)
            if c:
                e = tuple(int(x) for x in e)
                out[e] = out.get(e, 0) + c
        return MultiPolynomial(self, {e: as_scalar(c) for e, c in out.items() if c})

    def __call__(self, x) -> "MultiPolynomial":
        if isinstance(x, MultiPolynomial):
            if x.ring.nvars != self.nvars:
                raise ValueError("ring mismatch")
            return MultiPolynomial(self, dict(x.terms))
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def parse(self, text: str) -> "MultiPolynomial":
        """Parse ``"4*T1^2 - z3*T2 + 1/2"``.

        Variable names are the ring names; ``zN`` denotes a primitive N-th root
        of unity and ``i`` the fourth root.  Integer literals are exact.
        """
        return _parse(self, text)

    def extend(self, extra: int, names: Sequence[str] | None = None, order: int | None = None) -> "PolyRing":
        """A ring with ``extra`` more variables appended."""
        if names is None:
            names = [f"T{self.nvars + i + 1}" for i in range(extra)]
        return PolyRing(self.nvars + extra, order or self.order, list(self.names) + list(names))

    def with_order(self, order: int) -> "PolyRing":
        return PolyRing(self.nvars, order, self.names)


class _ExactLiterals(ast.NodeTransformer):
    def visit_BinOp(self, node):
        if isinstance(node.op, ast.Pow):
            node.left = self.visit(node.left)
            return node
        return self.generic_visit(node)

    def visit_Constant(self, node):
        if isinstance(node.value, int):
            return ast.Call(ast.Name("_Q", ast.Load()), [node], [])
        return node


_ALLOWED_NODES = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow,
    ast.USub, ast.UAdd, ast.Constant, ast.Name, ast.Load, ast.Call,
)


def _parse(ring: PolyRing, text: str) -> MultiPolynomial:
    src = text.replace("^", "**").strip()
    tree = ast.parse(src, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ValueError(f"unsupported syntax in polynomial {text!r}")
        if isinstance(node, ast.Call):
            raise ValueError(f"unsupported syntax in polynomial {text!r}")
    tree = ast.fix_missing_locations(_ExactLiterals().visit(tree))
    ns: dict = {"_Q": Fraction}
    for i, name in enumerate(ring.names):
        ns[name] = ring.variable(i)
    for m in re.finditer(r"\bz(\d+)\b", src):
        n = int(m.group(1))
        ns[f"z{n}"] = root_of_unity(n)
    if re.search(r"\bi\b", src) and "i" not in ns:
        ns["i"] = root_of_unity(4)
    for node in ast.walk(tree):
        if isinstance(node, ast.Name) and node.id not in ns:
            raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
    val = eval(compile(tree, "<poly>", "eval"), {"__builtins__": {}}, ns)
    if isinstance(val, MultiPolynomial):
        return MultiPolynomial(ring, val.terms)
    return ring.constant(val)


# ---------------------------------------------------------------------------
# polynomials


def _add_into(acc: dict, terms: dict, scale=None) -> None:
    for e, c in terms.items():
        if scale is not None:
            c = c * scale
        v = acc.get(e)
        if v is None:
            acc[e] = c
        else:
            v = v + c
            if v:
                acc[e] = v
            else:
                del acc[e]


def _mul_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e)
            c = ca * cb
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
    return out


class MultiPolynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic structure ----------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_coeff(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> list[int]:
        """Indices of variables actually occurring."""
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return sorted(used)

    def support(self) -> list[tuple]:
        return list(self.terms)

    def leading_monomial(self, order: MonomialOrder) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder):
        return self.terms[self.leading_monomial(order)]

    def leading_term(self, order: MonomialOrder) -> "MultiPolynomial":
        e = self.leading_monomial(order)
        return MultiPolynomial(self.ring, {e: self.terms[e]})

    def monic(self, order: MonomialOrder) -> "MultiPolynomial":
        if not self.terms:
            return self
        lc = self.leading_coeff(order)
        if lc == 1:
            return self
        inv = 1 / lc
        return MultiPolynomial(self.ring, {e: as_scalar(c * inv) for e, c in self.terms.items()})

    def is_homogeneous(self, weights: Sequence | None = None) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    def weighted_degrees(self, weights: Sequence | None = None) -> set:
        if weights is None:
            return {sum(e) for e in self.terms}
        return {sum(Fraction(w) * x for w, x in zip(weights, e)) for e in self.terms}

    def homogeneous_components(self, weights: Sequence | None = None) -> dict:
        out: dict = {}
        for e, c in self.terms.items():
            d = sum(e) if weights is None else sum(Fraction(w) * x for w, x in zip(weights, e))
            out.setdefault(d, {})[e] = c
        return {d: MultiPolynomial(self.ring, t) for d, t in out.items()}

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "MultiPolynomial | None":
        if isinstance(other, MultiPolynomial):
            if other.ring.nvars != self.ring.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        _add_into(out, o.terms)
        return MultiPolynomial(self._join_ring(o), out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPolynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        _add_into(out, o.terms, -1)
        return MultiPolynomial(self._join_ring(o), out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            c = as_scalar(other)
            if not c:
                return self.ring.zero()
            return MultiPolynomial(self.ring, {e: v * c for e, v in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = (self.terms, o.terms) if len(self.terms) >= len(o.terms) else (o.terms, self.terms)
        return MultiPolynomial(self._join_ring(o), _mul_terms(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            inv = 1 / as_scalar(other)
            return MultiPolynomial(self.ring, {e: as_scalar(v * inv) for e, v in self.terms.items()})
        return NotImplemented

    def __pow__(self, k):
        if isinstance(k, Fraction) and k.denominator == 1:
            k = int(k)
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def _join_ring(self, other: "MultiPolynomial") -> PolyRing:
        if other.ring is self.ring or other.ring.order == self.ring.order:
            return self.ring
        return self.ring if self.ring.order % other.ring.order == 0 else other.ring.with_order(
            self.ring.field.join(other.ring.field).order
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def mul_monomial(self, exp, coeff=1) -> "MultiPolynomial":
        c = as_scalar(coeff)
        return MultiPolynomial(
            self.ring, {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()}
        )

    # -- monomial content ------------------------------------------------------
    def monomial_content(self) -> tuple:
        """Exponent of the largest monomial dividing every term."""
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def divide_monomial(self, exp) -> "MultiPolynomial":
        out = {}
        for e, c in self.terms.items():
            d = tuple(a - b for a, b in zip(e, exp))
            if min(d) < 0:
                raise ValueError("monomial does not divide polynomial")
            out[d] = c
        return MultiPolynomial(self.ring, out)

    def strip_monomial_content(self) -> "MultiPolynomial":
        m = self.monomial_content()
        return self.divide_monomial(m) if any(m) else self

    # -- evaluation and substitution -------------------------------------------
    def diff(self, i: int) -> "MultiPolynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return MultiPolynomial(self.ring, out)

    def evaluate(self, point: Sequence):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total = total + t
        return as_scalar(total)

    def subs(self, values: dict) -> "MultiPolynomial":
        """Substitute scalars for some variables (index -> value); ring unchanged."""
        out: dict = {}
        for e, c in self.terms.items():
            d = list(e)
            for i, v in values.items():
                k = d[i]
                if k:
                    c = c * as_scalar(v) ** k
                    d[i] = 0
            if c:
                _add_into(out, {tuple(d): c})
        return MultiPolynomial(self.ring, {e: as_scalar(c) for e, c in out.items()})

    def compose(self, images: Sequence["MultiPolynomial"], ring: PolyRing | None = None) -> "MultiPolynomial":
        """Substitute ``images[i]`` for the i-th variable."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if ring is None:
            ring = images[0].ring if images else self.ring
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
            return powers[key]

        acc: dict = {}
        one = ring.one()
        for e, c in self.terms.items():
            t = one
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            _add_into(acc, t.terms, c)
        return MultiPolynomial(ring, {e: as_scalar(c) for e, c in acc.items()})

    def to_ring(self, ring: PolyRing, var_map: Sequence[int] | None = None) -> "MultiPolynomial":
        """Reindex variables: variable i goes to variable ``var_map[i]`` of ``ring``."""
        if var_map is None:
            var_map = list(range(self.nvars))
        out = {}
        n = ring.nvars
        for e, c in self.terms.items():
            d = [0] * n
            for i, k in enumerate(e):
                if k:
                    d[var_map[i]] += k
            out[tuple(d)] = c
        return MultiPolynomial(ring, out)

    def map_coefficients(self, fn) -> "MultiPolynomial":
        out = {}
        for e, c in self.terms.items():
            v = as_scalar(fn(c))
            if v:
                out[e] = v
        return MultiPolynomial(self.ring, out)

    def is_rational(self) -> bool:
        return all(not isinstance(c, CyclotomicNumber) for c in self.terms.values())

    # -- printing ------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"MultiPolynomial({str(self)!r})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or MonomialOrder.degrevlex()
        names = self.ring.names
        parts = []
        for e in order.sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            neg = False
            if isinstance(c, CyclotomicNumber):
                cs = str(c)
                if not cs.startswith("("):
                    cs = f"({cs})"
            else:
                if c < 0:
                    neg, c = True, -c
                cs = str(c)
                if "/" in cs and mono:
                    cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


# ---------------------------------------------------------------------------
# monomial substitution


def substitute_monomial_map(f: MultiPolynomial, images: Sequence[Sequence], ring: PolyRing | None = None):
    """Apply T_i -> T^{images[i]} (rational exponents) and clear to a polynomial.

    Returns ``(g, m)`` where ``m`` is the componentwise-minimal nonnegative
    rational exponent vector such that T^m * f(T^images) has nonnegative
    integer exponents, and ``g`` is that product.
    """
    if len(images) != f.nvars:
        raise ValueError("need one image per variable")
    r = len(images[0]) if images else 0
    if ring is None:
        ring = PolyRing(r, f.ring.order)
    if ring.nvars != r:
        raise ValueError("target ring has the wrong number of variables")
    imgs = [tuple(Fraction(x) for x in w) for w in images]
    raw: dict = {}
    for e, c in f.terms.items():
        d = [Fraction(0)] * r
        for i, k in enumerate(e):
            if k:
                for j in range(r):
                    d[j] += k * imgs[i][j]
        _add_into(raw, {tuple(d): c})
    if not raw:
        return ring.zero(), (Fraction(0),) * r
    clear = []
    for j in range(r):
        vals = [d[j] for d in raw]
        m = min(vals)
        fracs = {(v - m) % 1 for v in vals}
        if fracs != {0}:
            raise ValueError("image exponents do not share a fractional part; no monomial clears them")
        t = max(0, -(-m.numerator // m.denominator))  # ceil(m), floored at 0
        clear.append(-m + t)
    out = {}
    for d, c in raw.items():
        out[tuple(int(x + cl) for x, cl in zip(d, clear))] = as_scalar(c)
    return MultiPolynomial(ring, out), tuple(clear)


# ---------------------------------------------------------------------------
# Newton polytopes


class UnsupportedDimension(ValueError):
    """The polytope test only handles dimension at most two."""


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points; ``vertices`` sorted lexicographically."""

    vertices: tuple
    ambient_dim: int
    dimension: int = field(default=-1)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]]) -> "LatticePolytope":
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise ValueError("empty point set")
        n = len(pts[0])
        base = pts[0]
        dim = _dd.rank([tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]) if len(pts) > 1 else 0
        if len(pts) == 1:
            return cls(tuple(pts), n, 0)
        facets, eqs = _dd.v_to_h([(1,) + p for p in pts], n + 1)
        verts = [p for p in pts if _is_vertex((1,) + p, facets, eqs, dim)]
        return cls(tuple(verts), n, dim)

    def edges(self) -> list[tuple]:
        """Edges as vertex pairs (only meaningful for dimension >= 1)."""
        if self.dimension == 0:
            return []
        if self.dimension == 1:
            return [(self.vertices[0], self.vertices[-1])]
        facets, eqs = _dd.v_to_h([(1,) + v for v in self.vertices], self.ambient_dim + 1)
        out = []
        for a, b in _pairs(self.vertices):
            tight = [f for f in facets if _dd.dot(f, (1,) + a) == 0 and _dd.dot(f, (1,) + b) == 0]
            if _dd.rank(list(tight) + list(eqs)) == self.ambient_dim - 1:
                out.append((a, b))
        return out

    def cyclic_vertices(self) -> list[tuple]:
        """Vertices of a polygon in boundary order."""
        if self.dimension != 2:
            raise UnsupportedDimension("cyclic order needs a polygon")
        adj: dict = {v: [] for v in self.vertices}
        for a, b in self.edges():
            adj[a].append(b)
            adj[b].append(a)
        start = self.vertices[0]
        cyc = [start]
        prev, cur = None, start
        while True:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        return cyc


def _pairs(seq):
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            yield seq[i], seq[j]


def _is_vertex(p, facets, eqs, dim) -> bool:
    tight = [f for f in facets if _dd.dot(f, p) == 0]
    # p is a vertex iff the facets through it cut the affine hull down to a point
    return _dd.rank(tight + list(eqs)) == len(p) - 1


def newton_polytope(f: MultiPolynomial) -> LatticePolytope:
    if f.is_zero():
        raise ValueError("zero polynomial has no Newton polytope")
    return LatticePolytope.from_points(f.terms)


def _lattice_length(a, b) -> int:
    g = 0
    for x, y in zip(a, b):
        g = gcd(g, y - x)
    return g


def is_integrally_indecomposable(p: LatticePolytope) -> bool:
    """True iff p is not a Minkowski sum of two lattice polytopes that are not points.

    Supported for dimension at most two; higher dimension raises
    ``UnsupportedDimension``.
    """
    if p.dimension == 0:
        return True
    if p.dimension == 1:
        return _lattice_length(p.vertices[0], p.vertices[-1]) == 1
    if p.dimension > 2:
        raise UnsupportedDimension(f"polytope of dimension {p.dimension}")
    cyc = p.cyclic_vertices()
    edges = []
    for i in range(len(cyc)):
        a, b = cyc[i], cyc[(i + 1) % len(cyc)]
        ln = _lattice_length(a, b)
        d = tuple((y - x) // ln for x, y in zip(a, b))
        edges.append((d, ln))
    return not _closing_subsequence(edges)


def _closing_subsequence(edges) -> bool:
    """Is there a nonzero proper choice 0 <= k_i <= l_i with sum k_i d_i = 0?

    A polygon decomposes iff its boundary contains such a closed sub-walk.
    """
    n = len(edges[0][0])
    full = tuple(ln for _, ln in edges)
    found = False

    def rec(i, acc, ks):
        nonlocal found
        if found:
            return
        if i == len(edges):
            if not any(acc) and any(ks) and tuple(ks) != full:
                found = True
            return
        d, ln = edges[i]
        for k in range(ln + 1):
            rec(i + 1, tuple(a + k * x for a, x in zip(acc, d)), ks + [k])

    rec(0, (0,) * n, [])
    return found


# ---------------------------------------------------------------------------
# irreducibility certificates


@dataclass(frozen=True)
class Irreducible:
    reason: str

    def __str__(self) -> str:
        return f"Irreducible({self.reason})"


@dataclass(frozen=True)
class Reducible:
    witness: str

    def __str__(self) -> str:
        return f"Reducible({self.witness})"


@dataclass(frozen=True)
class Unverified:
    reason: str

    def __str__(self) -> str:
        return f"Unverified({self.reason})"


#: exponent bound for the polytope test; beyond it the search is skipped
MAX_POLYTOPE_COORD = 64


def _quadratic_rank(f: MultiPolynomial) -> int:
    """Rank of the symmetric matrix of a quadratic form (exact elimination)."""
    vs = f.variables()
    idx = {v: k for k, v in enumerate(vs)}
    n = len(vs)
    m = [[Fraction(0)] * n for _ in range(n)]
    for e, c in f.terms.items():
        sup = [i for i, x in enumerate(e) if x]
        if len(sup) == 1:
            m[idx[sup[0]]][idx[sup[0]]] = c
        else:
            a, b = idx[sup[0]], idx[sup[1]]
            m[a][b] = c / 2
            m[b][a] = c / 2
    return _field_rank(m)


def _field_rank(rows) -> int:
    m = [list(r) for r in rows]
    rk = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][c]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


def irreducibility_certificate(f: MultiPolynomial):
    """Decide (soundly, not completely) whether f is irreducible over C.

    The checks run in order: units and monomials, a monomial factor,
    binomials, quadratic forms, then integral indecomposability of the Newton
    polytope.  Anything undecided is ``Unverified``.
    """
    if f.is_zero():
        return Reducible("zero polynomial")
    if f.is_constant():
        return Unverified("unit")
    if f.is_monomial():
        (e,) = f.terms
        if sum(e) == 1:
            return Irreducible("variable")
        return Reducible(f"monomial {_mono_str(f.ring, e)}")
    m = f.monomial_content()
    if any(m):
        return Reducible(f"monomial factor {_mono_str(f.ring, m)}")
    if len(f.terms) == 2:
        a, b = f.terms
        g = 0
        for x, y in zip(a, b):
            g = gcd(g, x - y)
        if g == 1:
            return Irreducible("binomial with coprime exponent differences")
        return Reducible(f"binomial is a polynomial in a {g}-th power")
    if all(sum(e) == 2 for e in f.terms):
        rk = _quadratic_rank(f)
        if rk >= 3:
            return Irreducible(f"quadratic form of rank {rk}")
        return Reducible(f"quadratic form of rank {rk}")
    if max(max(e) for e in f.terms) > MAX_POLYTOPE_COORD:
        return Unverified("exponents too large for the polytope test")
    try:
        if is_integrally_indecomposable(newton_polytope(f)):
            return Irreducible("integrally indecomposable Newton polytope")
    except UnsupportedDimension as exc:
        return Unverified(str(exc))
    return Unverified("Newton polytope decomposes")


def _mono_str(ring: PolyRing, e) -> str:
    return "*".join(ring.names[i] if k == 1 else f"{ring.names[i]}^{k}" for i, k in enumerate(e) if k)
