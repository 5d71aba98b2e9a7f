from itertools import permutations
from math import comb

import pytest

from coxres.compare import equivalent_up_to_torus
from coxres.fixtures import PRESETS, load_fixture
from coxres.groebner import Ideal
from coxres.groups import MatrixGroup
from coxres.lattice import AbelianGroupSpec, mat_mul, transpose
from coxres.pipeline import (
    PipelineError,
    PseudoReflectionError,
    ambient_data,
    ambient_fan_on_support,
    brute_force_resolve,
    cox_quotient,
    crepancy_report,
    extend_generators,
    f_faces,
    is_q_homogeneous,
    modification_ideal,
    resolve_candidate,
    smoothness_check,
    verify_presentation,
)
from coxres.pipeline import _subdivided, _tropical_sigma_fan
from coxres.polyhedral import Cone, Fan
from coxres.polynomials import PolyRing

Q8_RAYS = [(3, 2, 2), (2, 1, 2), (2, 2, 1), (2, 1, 1)]


@pytest.fixture(scope="module")
def q8():
    return cox_quotient(load_fixture("q8"))


def test_q8_presentation(q8):
    assert q8.s == 3
    assert str(q8.spec) == "Z/2 + Z/2"
    (rel,) = q8.relations
    R = q8.ring
    assert equivalent_up_to_torus(rel, R.parse("4*T1^2 - T2^2 + T3^2")) is not None
    for g in q8.relations:
        assert is_q_homogeneous(g, q8.q, q8.moduli)


def test_trivial_group_gives_polynomial_ring():
    pres = cox_quotient(MatrixGroup([[[1, 0], [0, 1]]]))
    assert pres.s == 2 and pres.ideal.is_zero()
    assert pres.spec.is_trivial()
    p0, sigma, _ = ambient_data(pres)
    assert p0 == [[1, 0], [0, 1]] and sigma.is_regular()


def test_pseudo_reflections_are_refused():
    with pytest.raises(PseudoReflectionError, match="G/H"):
        cox_quotient(MatrixGroup([[[-1, 0], [0, 1]], [[0, 1], [1, 0]]]))


def test_extend_generators(q8):
    assert extend_generators(q8, []) is q8
    ext = extend_generators(q8, ["T2*T3"])
    assert ext.s == 4
    new = [g for g in ext.relations if g.degree_in(3)]
    assert len(new) == 1 and len(new[0].terms) == 2
    with pytest.raises(PipelineError):
        extend_generators(q8, ["T1 + T2"])


def test_ambient_data(q8):
    p0, sigma, fan = ambient_data(q8)
    assert sigma.multiplicity() == 4
    p0, sigma, _ = ambient_data(q8, [[1, 1, 1], [0, 2, 0], [0, 0, 2]])
    assert set(sigma.rays) == {(1, 0, 0), (1, 2, 0), (1, 0, 2)}
    with pytest.raises(PipelineError, match="row 1"):
        ambient_data(q8, [[1, 0, 0], [0, 2, 0], [0, 0, 2]])


def test_case1_override_accepted():
    pres = cox_quotient(load_fixture("case1"), base_generators=PRESETS["case1-crepant"].base_generators)
    p0, sigma, _ = ambient_data(pres, PRESETS["case1-crepant"].p0())
    assert len(sigma.rays) == 4


def test_modification_of_q8(q8):
    p0, _, _ = ambient_data(q8, [[1, 1, 1], [0, 2, 0], [0, 0, 2]])
    I0, P0, Q0, _, _ = modification_ideal(q8, p0, [])
    assert I0 is q8.ideal and P0 == p0
    I, p, q, moduli, spec = modification_ideal(q8, p0, Q8_RAYS)
    assert spec.free_rank == 4 and not spec.torsion
    (g,) = I.generators
    assert len(g.terms) == 3
    assert all(not any(r) for r in mat_mul(q, transpose(p)))
    # setting the new variables to 1 returns elements of I0
    back = g.subs({k: 1 for k in range(3, 7)})
    R3 = q8.ring
    assert Ideal(R3, q8.relations).contains(back.to_ring(R3))


def test_modification_rejects_vectors_outside_sigma(q8):
    p0, _, _ = ambient_data(q8)
    with pytest.raises(PipelineError):
        modification_ideal(q8, p0, [(-1, 0, 0)])
    with pytest.raises(PipelineError, match="primitive"):
        modification_ideal(q8, p0, [(2, 2, 2)])


def test_verify_presentation_examples():
    R8 = PolyRing(8)
    v = verify_presentation(Ideal(R8, [R8.parse("4*T3^3*T7 - T2^2*T6 - 27*T4^2*T8")]))
    assert [x for x, _ in v.variables_prime] == ["Yes"] * 8
    assert v.codim2
    R2 = PolyRing(2)
    v = verify_presentation(Ideal(R2, [R2.parse("T1*T2")]))
    assert v.variables_prime[0][0] == "No"
    R3 = PolyRing(3)
    v = verify_presentation(Ideal(R3, [R3.parse("4*T1^2 - T2^2 + T3^2")]))
    assert v.variables_prime[1][0] == "No"


def test_f_faces():
    R3 = PolyRing(3)
    faces = f_faces(Ideal(R3, [R3.parse("4*T1^2 - T2^2 + T3^2")]))
    assert faces == [(), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    R2 = PolyRing(2)
    assert f_faces(Ideal(R2, [])) == [(), (0,), (1,), (0, 1)]
    assert f_faces(Ideal(R2, [R2.parse("T1")])) == [(), (1,)]


def test_smoothness_gate_and_toric_case(q8):
    p0, _, sigma_fan = ambient_data(q8)
    verdict, details = smoothness_check(q8.ideal, p0, sigma_fan)
    assert verdict == "No" and details["reason"] == "fan is not regular"
    R2 = PolyRing(2)
    fan = Fan.from_cone(Cone([(1, 0), (0, 1)]))
    assert smoothness_check(Ideal(R2, []), [[1, 0], [0, 1]], fan)[0] == "Yes"


def test_q8_resolution(q8):
    rep = resolve_candidate(q8, [[1, 1, 1], [0, 2, 0], [0, 0, 2]])
    assert rep.stage == "done"
    assert set(rep.new_rays) == set(Q8_RAYS)
    assert rep.spec.free_rank == 4 and not rep.spec.torsion
    assert rep.smooth == "Yes" and rep.verdicts.all_yes()
    assert rep.fan.is_regular()


def test_empty_pool_on_smooth_input():
    pres = cox_quotient(MatrixGroup([[[1, 0], [0, 1]]]))
    rep = brute_force_resolve(pres)
    assert rep.m == 0 and rep.smooth == "Yes"


def test_crepancy_verdicts():
    G = load_fixture("case1")
    pres = cox_quotient(G, base_generators=PRESETS["case1-crepant"].base_generators)
    rep = brute_force_resolve(pres, PRESETS["case1-crepant"].p0(), vectors=PRESETS["case1-crepant"].vectors)
    assert crepancy_report(G, rep)["verdict"] == "Crepant"
    rep.new_rays = rep.new_rays + [(9, 9, 9, 9), (8, 8, 8, 8)]
    assert crepancy_report(G, rep)["verdict"] == "NotCrepant"
    assert crepancy_report(load_fixture("case4"), rep)["verdict"] == "NotApplicable"


def test_d8_four_dim_relation_count_from_hilbert_function():
    # [G,G] = {+-I}: every even-degree form is invariant, so the ten quadrics span
    # all 10 invariant quadrics and the quadratic relations number 55 - C(7,3) = 20
    pres = cox_quotient(load_fixture("d8-4d"))
    assert pres.s == 10
    assert all(g.total_degree() == 2 for g in pres.generators)
    assert all(r.total_degree() == 2 for r in pres.relations)
    assert len(pres.relations) == comb(11, 2) - comb(7, 3) == 20
    # degree columns agree with the reference matrix up to an automorphism of (Z/2)^2
    expected = [(1, 1)] * 3 + [(1, 0)] * 3 + [(0, 1)] + [(0, 0)] * 3
    ours = [pres.degree(i) for i in range(10)]
    nonzero = [(1, 0), (0, 1), (1, 1)]
    assert any(
        sorted(dict(zip(nonzero, img)).get(d, d) for d in ours) == sorted(expected)
        for img in permutations(nonzero)
    )


@pytest.mark.parametrize(
    "name, rank",
    [("case1", 4), ("case2", 4), ("case3", 4), ("case4", 4), ("case5", 5), ("case6", 5), ("case8", 5), ("case10", 5)],
)
def test_default_resolution_ranks_match_reference_table(name, rank):
    rep = resolve_candidate(cox_quotient(load_fixture(name)))
    assert rep.fully_verified()
    assert rep.spec == AbelianGroupSpec(rank)


def test_case9_default_resolution_is_smooth():
    # the reference resolution has Cl = Z^8; the default subdivision needs one ray fewer
    rep = resolve_candidate(cox_quotient(load_fixture("case9")))
    assert rep.fully_verified()
    assert rep.spec == AbelianGroupSpec(7)


def _support_fan_by_faces(fan, support):
    """Oracle: test every face of the fan against every support cone."""
    kept = []
    for c in fan.all_cones():
        if c.dim == 0:
            continue
        for t in support.fan.cones:
            k = c.intersect(t)
            if k.dim and c.contains_in_relative_interior(k.relative_interior_point()):
                kept.append(c)
                break
    return Fan(kept, fan.ambient_dim)


@pytest.mark.parametrize("preset_name", ["q8-2d-resolution", "case1-crepant", "case5-crepant"])
def test_support_restriction_matches_face_scan(preset_name):
    preset = PRESETS[preset_name]
    pres = cox_quotient(load_fixture(preset.fixture), base_generators=preset.base_generators)
    p0, _, sigma_fan = ambient_data(pres, preset.p0())
    _, proj, _ = _tropical_sigma_fan(pres, p0, sigma_fan)
    vectors = preset.vectors or Q8_RAYS
    fan = _subdivided(sigma_fan, vectors)
    fast = ambient_fan_on_support(fan, proj)
    assert fast == _support_fan_by_faces(fan, proj)
    assert len(fast.cones) < len(fan.all_cones())
