import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from coxres.lattice import (
    AbelianGroupSpec,
    cokernel_gale,
    determinant,
    finite_gale_dual,
    hermite_normal_form,
    in_row_lattice,
    integer_kernel,
    lattice_equal,
    mat_mul,
    primitive,
    rational_inverse,
    smith_normal_form,
    transpose,
)


def test_q8_finite_gale_dual():
    p0 = finite_gale_dual([[1, 1, 0], [1, 0, 1]], [2, 2])
    assert p0 == [[1, 1, 1], [0, 2, 0], [0, 0, 2]]
    assert abs(determinant(p0)) == 4


def test_finite_gale_dual_rejects_non_generating_degrees():
    with pytest.raises(ValueError):
        finite_gale_dual([[0, 0, 0]], [2])


def test_cokernel_of_case1_modification():
    # P0 columns (1,0,0,0),(1,2,0,0),(0,0,1,0),(0,0,0,1) plus rays (1,1,0,0),(1,2,1,1)
    cols = [(1, 0, 0, 0), (1, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 0, 0), (1, 2, 1, 1)]
    p = [list(r) for r in zip(*cols)]
    q, spec, _ = cokernel_gale(p)
    assert spec == AbelianGroupSpec(2)
    assert all(not any(row) for row in mat_mul(q, transpose(p)))


def test_cokernel_torsion():
    q, spec, moduli = cokernel_gale([[2, 0], [0, 3]])
    assert spec.free_rank == 0 and spec.torsion == (6,)
    assert spec.order == 6


def test_abelian_group_spec():
    assert str(AbelianGroupSpec(1, (2, 2))) == "Z + Z/2 + Z/2"
    assert AbelianGroupSpec(0).is_trivial()
    assert AbelianGroupSpec.from_invariants([1, 2, 0], 4) == AbelianGroupSpec(2, (2,))


def test_primitive_and_kernel():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    ker = integer_kernel([[1, 1, 1]])
    assert len(ker) == 2 and all(sum(r) == 0 for r in ker)


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def _unimodular(u):
    return abs(determinant(u)) == 1


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_hnf_unimodular_reconstruction(a):
    h, u = hermite_normal_form(a)
    assert _unimodular(u)
    assert mat_mul(u, a) == h
    assert lattice_equal(h, a)
    # echelon with positive pivots and reduced entries above
    last = -1
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        j = nz[0]
        assert j > last and row[j] > 0
        for above in h[: h.index(row)]:
            assert 0 <= above[j] < row[j]
        last = j


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_unimodular_and_matches_sympy(a):
    d, u, v = smith_normal_form(a)
    assert _unimodular(u) and _unimodular(v)
    assert mat_mul(mat_mul(u, a), v) == d
    diag = [d[i][i] for i in range(min(len(a), len(a[0])))]
    nz = [x for x in diag if x]
    assert all(b % a_ == 0 for a_, b in zip(nz, nz[1:]))
    ref = sympy_snf(sp.Matrix(a), domain=sp.ZZ)
    ref_diag = sorted(abs(ref[i, i]) for i in range(min(ref.shape)))
    assert sorted(abs(x) for x in diag) == ref_diag


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_gale_exactness(a):
    # Q P^T = 0 on the free part, and the cokernel order matches |det| when square and regular
    q, spec, moduli = cokernel_gale(a)
    free = [row for row, m in zip(q, moduli) if m == 0]
    assert all(not any(r) for r in mat_mul(free, transpose(a))) if free else True
    r = len(a[0])
    rank = sp.Matrix(a).rank()
    assert spec.free_rank == r - rank
    if len(a) == r and rank == r:
        assert spec.order == abs(determinant(a))
    for row, m in zip(q, moduli):
        if m:
            for arow in a:
                assert sum(x * y for x, y in zip(row, arow)) % m == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_rational_inverse_and_lattice_membership(a):
    if determinant(a) == 0:
        return
    inv = rational_inverse(a)
    assert mat_mul(inv, a) == [[int(i == j) for j in range(3)] for i in range(3)]
    for row in a:
        assert in_row_lattice(row, a)
