import cmath
from fractions import Fraction

import mpmath
import pytest

from coxres.cyclotomic import root_of_unity
from coxres.fixtures import fixture_names, load_fixture
from coxres.groups import GroupTooLarge, MatrixGroup, age

ORDERS = {
    "case1-s3": 6, "case2-d8": 8, "case3-q8": 8, "case4-q8": 8, "case5-d10": 10,
    "case6-d12": 12, "case7-a4": 12, "case8-bd3": 12, "case9-bd3": 12, "case10-bd3": 12,
    "q8-2d": 8, "s3-4d": 6, "d8-4d": 8,
}
ABELIANIZATION = {
    "case1-s3": "Z/2", "case2-d8": "Z/2 + Z/2", "case3-q8": "Z/2 + Z/2", "case4-q8": "Z/2 + Z/2",
    "case5-d10": "Z/2", "case6-d12": "Z/2 + Z/2", "case7-a4": "Z/3", "case8-bd3": "Z/4",
    "case9-bd3": "Z/4", "case10-bd3": "Z/4", "q8-2d": "Z/2 + Z/2", "s3-4d": "Z/2", "d8-4d": "Z/2 + Z/2",
}


def _complex(m):
    return mpmath.matrix([[complex(x.to_complex()) if hasattr(x, "to_complex") else complex(x) for x in row] for row in m])


def _numeric_age(m) -> Fraction:
    """Age from floating eigenvalues: sum of arguments / 2 pi, each in [0, 1)."""
    vals, _ = mpmath.eig(_complex(m))
    total = 0.0
    for v in vals:
        t = cmath.phase(complex(v)) / (2 * cmath.pi)
        if t < -1e-9:
            t += 1
        total += max(t, 0.0)
    return Fraction(total).limit_denominator(60)


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_orders_and_abelianization(name):
    G = load_fixture(name)
    assert G.order == ORDERS[name]
    assert str(G.abelianization()[0]) == ABELIANIZATION[name]
    assert not G.has_pseudo_reflections()
    assert G.order // G.derived_subgroup().order == G.abelianization()[0].order


@pytest.mark.parametrize("name", fixture_names())
def test_ages_agree_with_numeric_eigenvalues(name):
    G = load_fixture(name)
    for cls in G.conjugacy_classes():
        assert G.age(cls[0]) == _numeric_age(cls[0])


@pytest.mark.parametrize(
    "case, junior",
    [("case1", 2), ("case2", 4), ("case3", 4), ("case5", 3), ("case6", 5), ("case7", 3), ("case8", 5)],
)
def test_junior_classes(case, junior):
    assert load_fixture(case).junior_classes() == junior


def test_conjugacy_classes_partition_the_group():
    G = load_fixture("case7")
    classes = G.conjugacy_classes()
    assert sum(len(c) for c in classes) == G.order
    assert len(classes) == 4


def test_pseudo_reflection_detected():
    G = MatrixGroup([[[-1, 0], [0, 1]]])
    assert G.has_pseudo_reflections()


def test_infinite_group_is_rejected():
    G = MatrixGroup([[[1, 1], [0, 1]]], max_order=50)
    with pytest.raises(GroupTooLarge):
        G.order


def test_age_of_diagonal_matrix():
    z = root_of_unity(5)
    assert age([[z, 0, 0], [0, z ** 4, 0], [0, 0, 1]]) == 1
    assert age([[z, 0], [0, z]]) == Fraction(2, 5)
