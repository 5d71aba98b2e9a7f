import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from coxres.polyhedral import Cone, Fan, intersect_fans, parallelepiped_points, resolve_fan, stellar_subdivide, triangulate


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _brute_facets(rays):
    """Facet normals of a full-dimensional pointed 3d cone by checking all ray pairs."""
    out = set()
    for a, b in itertools.combinations(rays, 2):
        n = _cross(a, b)
        if not any(n):
            continue
        vals = [sum(x * y for x, y in zip(n, r)) for r in rays]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            if all(v <= 0 for v in vals):
                n = tuple(-x for x in n)
            g = math.gcd(*n)
            out.add(tuple(x // g for x in n))
    return out


def test_q8_cone_multiplicity():
    sigma = Cone([(1, 0, 0), (1, 2, 0), (1, 0, 2)])
    assert sigma.is_simplicial()
    assert sigma.multiplicity() == 4
    assert not sigma.is_regular()


def test_dual_of_dual_and_faces():
    c = Cone([(1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 1)])
    assert c.dual().dual() == c
    assert len([f for f in c.faces() if f.dim == 2]) == len(c.facets)


def test_cone_with_lineality():
    c = Cone([(1, 0, 0)], lineality=[(0, 1, 0)])
    assert c.dim == 2
    assert c.contains((5, -7, 0))
    assert not c.contains((-1, 0, 0))


def test_h_description_round_trip():
    c = Cone.from_inequalities([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
    assert Cone(c.rays) == c


def test_parallelepiped_points_count_equals_multiplicity():
    c = Cone([(1, 0, 0), (1, 2, 0), (1, 0, 2)])
    assert len(parallelepiped_points(c)) == c.multiplicity()


def test_stellar_subdivision_requires_support():
    f = Fan.from_cone(Cone([(1, 0), (1, 2)]))
    with pytest.raises(ValueError):
        stellar_subdivide(f, (-1, 0))


def test_q8_resolution_inserts_four_rays():
    f = Fan.from_cone(Cone([(1, 0, 0), (1, 2, 0), (1, 0, 2)]))
    # the tropical variety of a trinomial in three variables: codim-1 part of the normal fan
    out, inserted = resolve_fan(f)
    assert out.is_regular()
    assert all(out.contains(v) for v in inserted)


rays3 = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(1, 4)), min_size=3, max_size=5)


@settings(max_examples=60, deadline=None)
@given(rays3)
def test_facets_match_brute_force(rays):
    c = Cone(rays)
    if c.dim < 3:
        return
    assert set(c.facets) == _brute_facets(list(c.rays))


@settings(max_examples=40, deadline=None)
@given(rays3, st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=6))
def test_stellar_subdivision_preserves_support(rays, coeffs):
    c = Cone(rays)
    if c.dim < 3:
        return
    f = Fan.from_cone(c)
    cr = list(c.rays)
    v = tuple(sum(cr[i][k] for i in range(len(cr))) for k in range(3))
    g = stellar_subdivide(f, v)
    g_ = math.gcd(*v)
    assert tuple(x // g_ for x in v) in g.rays
    for co in coeffs:
        p = tuple(sum(a * r[k] for a, r in zip(co, cr)) for k in range(3))
        assert g.contains(p) == f.contains(p)
    for k in range(3):
        e = tuple(int(i == k) * -1 for i in range(3))
        assert g.contains(e) == f.contains(e)


@settings(max_examples=30, deadline=None)
@given(rays3)
def test_resolve_fan_is_regular_and_keeps_support(rays):
    c = Cone(rays)
    if c.dim < 3:
        return
    f = Fan.from_cone(c)
    out, inserted = resolve_fan(f)
    assert out.is_regular()
    assert triangulate(f).is_simplicial()
    for r in c.rays:
        assert out.contains(r)
    assert all(c.contains(v) for v in inserted)
    assert set(out.rays) >= set(c.rays)


def test_intersect_fans():
    a = Fan.from_cone(Cone([(1, 0), (0, 1)]))
    b = Fan.from_cone(Cone([(1, 1), (-1, 1)]))
    cut = intersect_fans(a, b)
    assert cut.maximal_cones
    assert all(a.contains(r) and b.contains(r) for r in cut.rays)
