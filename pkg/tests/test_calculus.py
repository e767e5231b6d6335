import pytest
from hypothesis import given
from hypothesis import strategies as st

from symdegen.calculus import (
    diagonal_specialization, diagonal_specialization_check, euler_defect, expected_polar_rank,
    gradient, gradient_from_cofactors, hessian, hessian_determinant, hessian_generic_rank,
    homaloidal_certificate, matrix_generic_rank,
)
from symdegen.polyring import derivative, hat, symmetric_ring
from symdegen.symmatrix import build, cofactors, determinant, general, generic, md_clone, sparse

CASES = [md_clone(m) for m in (3, 4, 5)] + [sparse(m, r) for m in (3, 4, 5) for r in range(1, m - 1)]


def x(i, j, m):
    return symmetric_ring(m).gen(i, j)


def test_gradient_examples():
    g = gradient(determinant(build(generic(2))))
    assert g.generators == [x(2, 2, 2), -2 * x(1, 2, 2), x(1, 1, 2)]
    M = build(md_clone(3))
    g = gradient(determinant(M), M.variables)
    assert len(g) == 5 and all(p.degree() == 2 and p.is_homogeneous() for p in g.generators)
    M = build(sparse(4, 1))
    assert len(gradient(determinant(M), M.variables)) == 9


def test_gradient_of_zero_raises():
    with pytest.raises(ValueError):
        gradient(symmetric_ring(3).zero())


@pytest.mark.invariant
@pytest.mark.parametrize("deg", CASES, ids=lambda d: d.label())
def test_partials_are_cofactor_sums(deg):
    M = build(deg)
    f = determinant(M)
    assert gradient(f, M.variables).generators == gradient_from_cofactors(M).generators


def test_cofactor_rule_examples():
    M = build(md_clone(3))
    t = cofactors(M)
    g = gradient(determinant(M), M.variables)
    assert g[(2, 2)] == t(2, 2) + t(3, 3)
    assert g[(1, 2)] == 2 * t(1, 2)
    S = build(sparse(4, 1))
    assert gradient(determinant(S), S.variables)[(1, 1)] == cofactors(S)(1, 1)


@pytest.mark.invariant
@pytest.mark.parametrize("deg", CASES, ids=lambda d: d.label())
def test_euler_identity(deg):
    M = build(deg)
    f = determinant(M)
    assert euler_defect(f, gradient(f, M.variables)).is_zero()


def test_hessian_examples():
    H = hessian(determinant(build(generic(2))))
    assert abs(hessian_determinant(H).terms[(0, 0, 0)]) == 2
    M = build(md_clone(3))
    H = hessian(determinant(M), M.variables)
    assert H.size == 5
    assert all(e.is_zero() or e.degree() == 1 for row in H.entries for e in row)
    origin = {v: 0 for v in M.variables}
    assert all(v == 0 for row in H.at(origin) for v in row)


@pytest.mark.invariant
@pytest.mark.parametrize("deg", [md_clone(4), sparse(5, 2)], ids=lambda d: d.label())
def test_hessian_is_symmetric_jacobian_of_gradient(deg):
    M = build(deg)
    f = determinant(M)
    g = gradient(f, M.variables)
    H = hessian(f, M.variables)
    for a, u in enumerate(M.variables):
        for b, v in enumerate(M.variables):
            assert H.entries[a][b] == derivative(g.generators[a], v) == H.entries[b][a]


def test_exact_hessian_determinant_is_size_capped():
    M = build(md_clone(4))
    with pytest.raises(ValueError):
        hessian_determinant(hessian(determinant(M), M.variables))


def test_sampled_hessian_rank_examples():
    M = build(md_clone(3))
    assert hessian_generic_rank(hessian(determinant(M), M.variables)).value == 5
    for m, r, want in ((4, 1, 8), (5, 2, 11)):
        S = build(sparse(m, r))
        est = hessian_generic_rank(hessian(determinant(S), S.variables))
        assert est.value == want == expected_polar_rank(m, r)


@pytest.mark.invariant
@pytest.mark.parametrize("m,r", [(m, r) for m in (3, 4, 5) for r in range(1, m - 1)])
def test_polar_rank_never_exceeds_expected(m, r):
    S = build(sparse(m, r))
    est = hessian_generic_rank(hessian(determinant(S), S.variables), trials=8, seed=7)
    assert max(est.ranks) <= expected_polar_rank(m, r)
    assert est.value == expected_polar_rank(m, r)


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_rank_estimate_monotone_in_trials(trials, seed):
    M = build(md_clone(3))
    H = hessian(determinant(M), M.variables)
    a = matrix_generic_rank(H.entries, M.variables, trials, seed)
    b = matrix_generic_rank(H.entries, M.variables, trials + 2, seed)
    assert a.value <= b.value <= H.size
    assert a.value == max(a.ranks)
    assert b.ranks[:trials] == a.ranks


def test_diagonal_specialization_frozen_values():
    # oracle: sympy Hessian of the clone determinant, off-diagonal variables set to 0
    d3 = diagonal_specialization(build(md_clone(3)))
    assert d3.ok and d3.blocks_vanish
    assert str(d3.det) == "32*x11*x22^4"
    d4 = diagonal_specialization(build(md_clone(4)))
    assert str(d4.det) == "384*x11^4*x22^4*x33^10"


@pytest.mark.parametrize("m", [3, 4, 5])
def test_diagonal_specialization_check(m):
    assert diagonal_specialization_check(build(md_clone(m)))


def test_diagonal_specialization_needs_clone():
    with pytest.raises(ValueError):
        diagonal_specialization(build(sparse(4, 1)))


@pytest.mark.parametrize("m", [3, 4])
def test_clone_is_certified_homaloidal(m):
    rep = homaloidal_certificate(m)
    assert rep.hessian_nonvanishing and rep.linear_rank == m * (m + 1) // 2 - 2
    assert rep.homaloidal


def test_bad_cloning_is_not_certified():
    rep = homaloidal_certificate(build(general(3, {hat(2, 3): hat(1, 1)})))
    assert rep.hessian_nonvanishing
    assert rep.linear_rank == 3 and rep.linear_rank_expected == 4
    assert not rep.homaloidal
