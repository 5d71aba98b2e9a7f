from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxres.cyclotomic import root_of_unity
from coxres.polynomials import (
    Irreducible,
    MonomialOrder,
    PolyRing,
    Reducible,
    irreducibility_certificate,
    newton_polytope,
    substitute_monomial_map,
)

R3 = PolyRing(3)


def test_parse_and_print_round_trip():
    f = R3.parse("4*T1^2 - T2^2 + T3^2")
    assert R3.parse(str(f)) == f
    g = R3.parse("(1/4)*T1*T2 - z4*T3")
    assert g.coefficient((0, 0, 1)) == -root_of_unity(4)
    assert g.coefficient((1, 1, 0)) == Fraction(1, 4)


def test_monomial_orders():
    e = [(2, 0, 0), (1, 1, 1), (0, 0, 4), (0, 3, 0)]
    assert MonomialOrder.lex().max(e) == (2, 0, 0)
    assert MonomialOrder.degrevlex().max(e) == (0, 0, 4)
    assert MonomialOrder.elimination([1]).max(e) == (0, 3, 0)
    assert MonomialOrder.weight([0, 0, -1]).max(e) == (0, 3, 0)


def test_derivative_evaluation_substitution():
    f = R3.parse("T1^3*T2 + 2*T3")
    assert f.diff(0) == R3.parse("3*T1^2*T2")
    assert f.evaluate([1, 2, 3]) == 8
    assert f.subs({0: 0}) == R3.parse("2*T3")


def test_monomial_map_with_rational_exponents_clears_denominators():
    f = R3.parse("T1 + T2")
    g, clear = substitute_monomial_map(f, [[1, Fraction(1, 2), 0], [0, Fraction(3, 2), 0], [0, 0, 1]])
    assert clear == (0, Fraction(1, 2), 0)
    assert g == R3.parse("T1*T2 + T2^2")
    with pytest.raises(ValueError):
        substitute_monomial_map(R3.parse("T1 + T3"), [[Fraction(1, 2), 0, 0], [0, 1, 0], [0, 0, 1]])


def test_homogeneity_and_components():
    f = R3.parse("T1^2 + T2*T3 + T1")
    assert not f.is_homogeneous()
    comps = f.homogeneous_components()
    assert set(comps) == {1, 2}
    assert R3.parse("T1^2 + T2").is_homogeneous([1, 2, 0])


@pytest.mark.parametrize(
    "text, kind",
    [
        ("T1", Irreducible),
        ("T1^2", Reducible),
        ("T1*T2 + T1*T3", Reducible),
        ("T1^2 - T2^3", Irreducible),
        ("T1^2 - T2^2", Reducible),
        ("4*T1^2 - T2^2 + T3^2", Irreducible),
        ("4*T1^2 + T3^2", Reducible),
        ("T1^3 + T2^3 + T3*T1^2", Irreducible),
        ("4*T3^3 - T2^2 - 27*T1^2", Irreducible),
    ],
)
def test_irreducibility_certificates(text, kind):
    assert isinstance(irreducibility_certificate(R3.parse(text)), kind)


def test_newton_polytope_vertices():
    p = newton_polytope(R3.parse("T1^3 + T2^3 + T3^3 + T1*T2*T3"))
    assert sorted(p.vertices) == [(0, 0, 3), (0, 3, 0), (3, 0, 0)]


small_polys = st.lists(
    st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)), st.integers(-3, 3)),
    min_size=1,
    max_size=4,
).map(lambda terms: R3.from_dict({e: c for e, c in terms if c}))


@settings(max_examples=80, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).is_zero()
    pt = [2, -1, 3]
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)


@settings(max_examples=200, deadline=None)
@given(small_polys, small_polys)
def test_certificate_never_calls_a_product_irreducible(f, g):
    if f.is_constant() or g.is_constant():
        return
    assert not isinstance(irreducibility_certificate(f * g), Irreducible)


def test_decomposable_polytope_is_left_unverified():
    # the Fermat cubic is irreducible, but its Newton polytope is 3 times a simplex
    cert = irreducibility_certificate(R3.parse("T1^3 + T2^3 + T3^3"))
    assert not isinstance(cert, (Irreducible, Reducible))
