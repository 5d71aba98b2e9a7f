import pytest
from hypothesis import given, settings, strategies as st

from coxres.groebner import Ideal
from coxres.polynomials import PolyRing
from coxres.tropical import project_tropical, ray_in_tropical, tropical_hypersurface, tropical_prevariety

R3 = PolyRing(3)


def test_linear_form_gives_three_half_planes():
    t = tropical_hypersurface(R3.parse("T1 + T2 + T3"))
    assert len(t.cones) == 3
    assert all(c.lineality == ((1, 1, 1),) for c in t.cones)
    assert t.contains((0, 0, -1)) and not t.contains((0, 0, 1))


def test_min_convention_negates():
    f = R3.parse("T1 + T2 + T3")
    tmax = tropical_hypersurface(f, "max")
    tmin = tropical_hypersurface(f, "min")
    for w in [(0, 0, -1), (1, 0, 0), (2, 2, -5)]:
        assert tmax.contains(w) == tmin.contains(tuple(-x for x in w))
    assert tmin.contains((0, 0, 1))
    with pytest.raises(ValueError):
        tropical_hypersurface(f, "median")


def test_monomial_has_empty_tropical_variety():
    assert tropical_hypersurface(R3.parse("T1*T2")).is_empty()


def test_q8_relation_in_sigma_coordinates():
    f = R3.parse("4*T1^2 - T2^2 + T3^2")
    t = tropical_hypersurface(f, "min")
    p = project_tropical([[1, 1, 1], [0, 2, 0], [0, 0, 2]], t)
    assert p.provenance == "projected" and p.exact
    assert len(p.cones) == len(t.cones)


def test_prevariety_of_two_generators_contains_variety():
    I = Ideal(R3, [R3.parse("T1 + T2 + T3"), R3.parse("T1 - 2*T2 + 5*T3")])
    t = tropical_prevariety(I.generators)
    assert not t.exact
    # V(I) is a line through a torus point, so Trop(I) is the line spanned by (1,1,1)
    assert ray_in_tropical(I, (1, 1, 1))
    assert not ray_in_tropical(I, (0, 0, -1))
    for r in t.rays:
        assert t.contains(r)


def test_ray_membership_example():
    I = Ideal(R3, [R3.parse("T1^2 - T2*T3")])
    assert ray_in_tropical(I, (1, 1, 1))
    assert not ray_in_tropical(I, (0, 0, -1))
    assert ray_in_tropical(I, (1, 2, 0))
    assert not ray_in_tropical(I, (1, 0, 0))


small = st.lists(
    st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3).filter(bool)),
    min_size=2,
    max_size=4,
).map(lambda terms: R3.from_dict(dict(terms)))


@settings(max_examples=40, deadline=None)
@given(small, st.sampled_from(["max", "min"]))
def test_every_produced_ray_passes_membership(f, convention):
    if len(f.terms) < 2:
        return
    t = tropical_hypersurface(f, convention)
    I = Ideal(R3, [f])
    for c in t.cones:
        p = c.relative_interior_point()
        assert ray_in_tropical(I, p, convention)
        for r in c.rays:
            assert ray_in_tropical(I, r, convention)
        for l in c.lineality:
            assert ray_in_tropical(I, l, convention)


@settings(max_examples=40, deadline=None)
@given(small, st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)))
def test_membership_agrees_with_hypersurface(f, w):
    if len(f.terms) < 2:
        return
    t = tropical_hypersurface(f)
    assert t.contains(w) == ray_in_tropical(Ideal(R3, [f]), w)
