"""Exact arithmetic in the rationals and in cyclotomic fields Q(zeta_n).

Elements of Q(zeta_n) are stored in the power basis 1, z, ..., z^(phi(n)-1)
reduced modulo the n-th cyclotomic polynomial, so equality is a plain
coefficient comparison once both operands live in the same field.  Mixed-order
arithmetic coerces both sides into Q(zeta_lcm).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = [
    "CyclotomicField",
    "CyclotomicNumber",
    "cyclotomic_field",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "minimal_cyclotomic_order",
    "as_scalar",
    "MAX_ORDER",
]

#: coercion into fields larger than this is refused
MAX_ORDER = 5040


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, coefficient lists low -> high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high degree) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """x^j mod Phi_n for j = 0 .. n-1 as integer coefficient vectors."""
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    table = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        table.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(phi):
                cur[k] -= top * mod[k]
    return tuple(table)


@lru_cache(maxsize=None)
def _normalized_traces(n: int) -> tuple[Fraction, ...]:
    # Tr(z^k)/phi(n) for the power basis; independent of the ambient field
    out = []
    for k in range(euler_phi(n)):
        m = n // gcd(n, k) if k else 1
        out.append(Fraction(_mobius(m), euler_phi(m)))
    return tuple(out)


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


class CyclotomicField:
    """The field Q(zeta_n); instances are cached per order."""

    __slots__ = ("order", "degree", "cyclotomic_polynomial")

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.degree = euler_phi(order)
        self.cyclotomic_polynomial = cyclotomic_polynomial(order)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __repr__(self) -> str:
        return "QQ" if self.order == 1 else f"QQ(zeta{self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("CyclotomicField", self.order))

    def zeta(self, k: int = 1):
        return self.convert(root_of_unity(self.order, k))

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def convert(self, x):
        """Coerce into this field.

        Rational fields hand back plain ``Fraction`` objects, which keeps the
        hot loops of Groebner reduction on the fast path.
        """
        if self.degree == 1:
            if isinstance(x, CyclotomicNumber):
                if not x.is_rational():
                    raise ValueError(f"{x} does not lie in {self!r}")
                return x.coeffs[0]
            return Fraction(x)
        if isinstance(x, CyclotomicNumber):
            if x.order == self.order:
                return x
            if self.order % x.order:
                raise ValueError(f"{x} does not embed into {self!r}")
            return x.coerce(self.order)
        return CyclotomicNumber.from_rational(self.order, x)

    def contains(self, x) -> bool:
        if isinstance(x, CyclotomicNumber):
            return self.order % x.order == 0 or x.is_rational()
        return True

    def join(self, other: "CyclotomicField") -> "CyclotomicField":
        return cyclotomic_field(lcm(self.order, other.order))


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    if n > MAX_ORDER:
        raise OverflowError(f"cyclotomic order {n} exceeds MAX_ORDER={MAX_ORDER}")
    return CyclotomicField(n)


class CyclotomicNumber:
    """An element of Q(zeta_n) in the reduced power basis.

    Immutable.  Arithmetic accepts ints, Fractions and cyclotomic numbers of any
    order; mixed orders are coerced to the lcm.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        phi = euler_phi(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) > phi:
            coeffs = _reduce(order, coeffs)
        elif len(coeffs) < phi:
            coeffs = coeffs + (Fraction(0),) * (phi - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "CyclotomicNumber":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_rational(cls, order: int, x) -> "CyclotomicNumber":
        phi = euler_phi(order)
        return cls._raw(order, (Fraction(x),) + (Fraction(0),) * (phi - 1))

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # -- coercion ---------------------------------------------------------
    def coerce(self, order: int) -> "CyclotomicNumber":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta{self.order}) into Q(zeta{order})")
        if order > MAX_ORDER:
            raise OverflowError(f"cyclotomic order {order} exceeds MAX_ORDER={MAX_ORDER}")
        step = order // self.order
        table = _power_table(order)
        phi = euler_phi(order)
        out = [Fraction(0)] * phi
        for k, c in enumerate(self.coeffs):
            if c:
                row = table[(k * step) % order]
                for j, t in enumerate(row):
                    if t:
                        out[j] += c * t
        return CyclotomicNumber._raw(order, tuple(out))

    def _common(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return self, other
            n = lcm(self.order, other.order)
            return self.coerce(n), other.coerce(n)
        if isinstance(other, (int, Fraction, Rational)):
            return self, CyclotomicNumber.from_rational(self.order, other)
        return NotImplemented, NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return CyclotomicNumber._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, tuple(-x for x in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return CyclotomicNumber._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 1:
                return self
            return CyclotomicNumber._raw(self.order, tuple(x * other for x in self.coeffs))
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        if b.is_rational():
            c = b.coeffs[0]
            return CyclotomicNumber._raw(a.order, tuple(x * c for x in a.coeffs))
        if a.is_rational():
            c = a.coeffs[0]
            return CyclotomicNumber._raw(a.order, tuple(x * c for x in b.coeffs))
        n = a.order
        phi = len(a.coeffs)
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber._raw(n, _reduce(n, prod))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber.from_rational(self.order, 1 / self.coeffs[0])
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        s = _poly_inverse_mod(list(self.coeffs), mod)
        return CyclotomicNumber(self.order, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CyclotomicNumber._raw(self.order, tuple(x / other for x in self.coeffs))
        if isinstance(other, CyclotomicNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.from_rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugate (z -> z^-1)."""
        n = self.order
        table = _power_table(n)
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c:
                for j, t in enumerate(table[(-k) % n]):
                    if t:
                        out[j] += c * t
        return CyclotomicNumber._raw(n, tuple(out))

    def galois(self, a: int) -> "CyclotomicNumber":
        """Image under z -> z^a (a coprime to the order)."""
        n = self.order
        if gcd(a, n) != 1:
            raise ValueError("Galois exponent must be a unit")
        table = _power_table(n)
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c:
                for j, t in enumerate(table[(a * k) % n]):
                    if t:
                        out[j] += c * t
        return CyclotomicNumber._raw(n, tuple(out))

    def conductor(self) -> int:
        """Smallest m such that this element lies in Q(zeta_m)."""
        if self.is_rational():
            return 1
        n = self.order
        for d in _divisors(n):
            if d % 4 == 2:
                continue
            if all(
                self.galois(a) == self
                for a in range(1, n)
                if (a - 1) % d == 0 and gcd(a, n) == 1
            ):
                return d
        return n

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            a, b = self._common(other)
            return a.coeffs == b.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        tr = _normalized_traces(self.order)
        return hash(("cyc", sum((c * t for c, t in zip(self.coeffs, tr)), Fraction(0))))

    # -- text -------------------------------------------------------------
    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if k == 0 else (f"z{self.order}" if k == 1 else f"z{self.order}^{k}")
            if not z:
                parts.append(str(c))
            elif c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                parts.append(f"{c}*{z}")
        text = "+".join(parts).replace("+-", "-")
        return f"({text})"


def _reduce(n: int, coeffs) -> tuple[Fraction, ...]:
    phi = euler_phi(n)
    if len(coeffs) <= phi:
        out = list(coeffs) + [Fraction(0)] * (phi - len(coeffs))
        return tuple(out)
    table = _power_table(n)
    out = list(coeffs[:phi])
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            for j, t in enumerate(table[k % n]):
                if t:
                    out[j] += c * t
    return tuple(out)


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, d in enumerate(b):
                a[i + j] -= c * d
    return q, _poly_trim(a[: len(b) - 1])


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list, m: list) -> list:
    # extended Euclid: find s with s*a = 1 mod m
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    c = r0[0]
    _, s = _poly_divmod([x / c for x in s0], m)
    return s


def root_of_unity(n: int, k: int = 1) -> CyclotomicNumber:
    """zeta_n^k in Q(zeta_n), reduced canonically."""
    if n < 1:
        raise ValueError("n must be positive")
    row = _power_table(n)[k % n]
    return CyclotomicNumber._raw(n, tuple(Fraction(c) for c in row))


def as_scalar(x):
    """Normalize a scalar: rational cyclotomic numbers collapse to Fraction."""
    if isinstance(x, CyclotomicNumber):
        return x.coeffs[0] if x.is_rational() else x
    return Fraction(x)


def scalar_order(x) -> int:
    return x.conductor() if isinstance(x, CyclotomicNumber) else 1


def minimal_cyclotomic_order(matrices, max_group_order: int = 10000) -> int:
    """Smallest field order holding every entry and every eigenvalue.

    That is the lcm of the entry orders and the exponent of the generated group
    (all eigenvalues are roots of unity of order dividing the exponent).
    """
    from .groups import MatrixGroup

    mats = [list(map(list, m)) for m in matrices]
    if not mats:
        return 1
    entry_order = 1
    for m in mats:
        for row in m:
            for x in row:
                entry_order = lcm(entry_order, scalar_order(x))
    group = MatrixGroup(mats, max_order=max_group_order)
    return lcm(entry_order, group.exponent())
