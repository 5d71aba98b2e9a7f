from hypothesis import given, settings, strategies as st

from coxres.groebner import Ideal
from coxres.localize import find_linear_solve, prime_certificate, singular_locus_empty, substitute_solve
from coxres.polynomials import PolyRing

R3 = PolyRing(3)
R4 = PolyRing(4, names=["x", "y", "z", "w"])


def test_linear_solve_prefers_constant_coefficient():
    gens = [R3.parse("T1*T2 - T3"), R3.parse("T3*T1 + T2^2")]
    sol = find_linear_solve(gens, [0, 1, 2])
    assert sol.var == 2 and sol.coeff.is_constant()


def test_substitution_clears_the_coefficient():
    sol = find_linear_solve([R3.parse("T1*T2 - T3^2")], [0])
    assert sol.var == 1
    h = substitute_solve(R3.parse("T2^2 + T1"), sol)
    # T2 = T3^2/T1, numerator of T3^4/T1^2 + T1 is T3^4 + T1^3
    assert h == R3.parse("T3^4 + T1^3")


def test_twisted_cubic_is_prime():
    I = Ideal(R4, [R4.parse("y - x^2"), R4.parse("z - x*y"), R4.parse("x*z - y^2")])
    verdict, cert = prime_certificate(I)
    assert verdict == "Yes"
    assert "solve" in str(cert)


def test_non_primes_are_rejected():
    assert prime_certificate(Ideal(R3, [R3.parse("T1*T2")]))[0] == "No"
    assert prime_certificate(Ideal(R3, [R3.parse("T1^2 - T2^2")]))[0] == "No"
    assert prime_certificate(Ideal(R3, [R3.parse("T1"), R3.parse("T1 - 1")]))[0] == "No"


def test_zero_divisor_coefficient_is_not_certified():
    # T1*T2 - T1*T3 = T1*(T2 - T3): solving for T2 divides by T1, a zero divisor
    I = Ideal(R3, [R3.parse("T1*T2 - T1*T3")])
    assert prime_certificate(I)[0] == "No"
    J = Ideal(R4, [R4.parse("x*y - x*z"), R4.parse("x*w")])
    assert prime_certificate(J)[0] != "Yes"


def test_cone_is_smooth_on_the_torus_but_not_at_the_origin():
    I = Ideal(R3, [R3.parse("T1^2 + T2^2 - T3^2")])
    assert singular_locus_empty(I, [0, 1, 2], 1) is True
    assert singular_locus_empty(I, [], 1) is False
    assert singular_locus_empty(I, [2], 1) is True


def test_whitney_umbrella_singular_along_a_line():
    # x^2 - y^2 z is singular along x = y = 0, which meets the chart z != 0
    I = Ideal(R3, [R3.parse("T1^2 - T2^2*T3")])
    assert singular_locus_empty(I, [2], 1) is False
    assert singular_locus_empty(I, [1], 1) is True


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3).filter(bool))
def test_graph_of_a_polynomial_is_smooth_and_prime(a, b, c):
    # V(T3 - c*T1^a*T2^b) is a graph, so smooth everywhere and prime
    I = Ideal(R3, [R3.parse(f"T3 - ({c})*T1^{a}*T2^{b}")])
    assert singular_locus_empty(I, [], 1) is True
    assert prime_certificate(I)[0] == "Yes"
