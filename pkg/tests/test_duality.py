from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdegen.duality import (
    X11, MinorSystem, clone_mask, clone_quadric, dual_dimension, dual_ladder_clone,
    dual_ladder_sparse, expected_dual_rank, expected_multiplicity, gorenstein_check,
    hessian_multiplicity, hessian_rank_on_hypersurface, hypersurface_equation_report,
    ladder_divisibility, polar_ladder_sparse, polar_ladder_vanishing, quadric_report,
    random_ladderlike, sample_on_hypersurface, solve_on_hypersurface, sparse_mask,
    sparse_position_count, substitute_cofactors, two_by_two_ladder, _order_at_zero,
)
from symdegen.polyring import evaluate, hat, symmetric_ring
from symdegen.symmatrix import build, determinant, md_clone, sparse, zero_count


def det_of(deg):
    M = build(deg)
    return M, determinant(M)


def y(i, j, m):
    return symmetric_ring(m, "y").gen(i, j)


def test_solve_on_hypersurface_example():
    _, f = det_of(md_clone(3))
    pt = solve_on_hypersurface(f, {hat(1, 2): 1, hat(1, 3): 1, hat(2, 2): 2, hat(2, 3): 3})
    assert pt.point[X11] == Fraction(2, 5)
    assert pt.denominator == -5
    assert evaluate(f, pt.point) == 0


def test_solve_rejects_vanishing_denominator():
    _, f = det_of(md_clone(3))
    # Delta_11 = x22^2 - x23^2 vanishes when x22 = x23
    assert solve_on_hypersurface(f, {hat(1, 2): 1, hat(1, 3): 2, hat(2, 2): 3, hat(2, 3): 3}) is None


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=15)
def test_sampled_points_lie_on_hypersurface(seed):
    _, f = det_of(sparse(4, 1))
    hp = sample_on_hypersurface(f, seed=seed)
    assert evaluate(f, hp.point) == 0 and hp.denominator != 0


def test_sampling_is_reproducible():
    _, f = det_of(md_clone(4))
    assert sample_on_hypersurface(f, seed=5).point == sample_on_hypersurface(f, seed=5).point


def test_x11_must_appear_linearly():
    ring = symmetric_ring(3)
    with pytest.raises(ValueError):
        sample_on_hypersurface(ring.gen(1, 1) ** 2 + ring.gen(2, 2) ** 2)


@pytest.mark.parametrize("deg", [md_clone(3), md_clone(4), sparse(4, 1), sparse(4, 2), sparse(5, 2)],
                         ids=lambda d: d.label())
def test_dual_dimension(deg):
    _, f = det_of(deg)
    est = hessian_rank_on_hypersurface(f)
    assert est.value == expected_dual_rank(deg.m)
    assert max(est.ranks) == est.value
    assert dual_dimension(f) == deg.m - 1


@pytest.mark.invariant
@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_ladderlike_dual_dimension_lower_bound(m, seed):
    deg = random_ladderlike(m, seed=seed)
    _, f = det_of(deg)
    assert hessian_rank_on_hypersurface(f, trials=4, seed=seed).value >= m + 1


def test_ladderlike_degenerations_fix_the_upper_corner():
    for seed in range(5):
        deg = random_ladderlike(5, seed=seed)
        M = build(deg)
        for i in range(1, 6):
            for j in range(1, 6):
                if i + j <= 7:
                    assert M.entry(i, j) == hat(i, j)


def test_clone_ladder_m3():
    L = dual_ladder_clone(3)
    assert [str(g) for g in L.generators] == ["y12*y13 - y11*y23"]
    assert L.supported()


def test_sparse_ladder_m3_r1():
    L = dual_ladder_sparse(3, 1)
    want = {y(1, 1, 3) * y(2, 2, 3) - y(1, 2, 3) ** 2,
            y(1, 1, 3) * y(2, 3, 3) - y(1, 2, 3) * y(1, 3, 3),
            y(1, 2, 3) * y(2, 3, 3) - y(2, 2, 3) * y(1, 3, 3)}
    got = set(L.generators)
    assert len(got) == 3
    assert all(g in want or -g in want for g in got)


def test_ladder_generator_counts():
    assert len(dual_ladder_clone(4)) == 10
    assert [len(dual_ladder_sparse(4, r)) for r in (0, 1, 2)] == [21, 15, 9]


def test_two_by_two_ladder_of_full_mask_is_all_symmetric_minors():
    full = {(i, j) for i in range(1, 4) for j in range(i, 4)}
    # 2x2 minors of a generic symmetric 3x3: 6 distinct up to sign
    assert len(two_by_two_ladder(3, full)) == 6


@pytest.mark.invariant
@pytest.mark.parametrize("m", [3, 4])
def test_clone_ladder_divisible(m):
    M = build(md_clone(m))
    assert all(ladder_divisibility(dual_ladder_clone(m), M))


@pytest.mark.invariant
@pytest.mark.parametrize("m,r", [(3, 1), (4, 1), (4, 2)])
def test_sparse_ladder_divisible(m, r):
    M = build(sparse(m, r))
    assert all(ladder_divisibility(dual_ladder_sparse(m, r), M))


def test_masks():
    assert clone_mask(3) == {hat(1, 1), hat(1, 2), hat(1, 3), hat(2, 3)}
    assert hat(3, 3) not in sparse_mask(3, 1)
    for m in range(3, 8):
        assert len(sparse_mask(m, 0)) == comb(m + 1, 2)
        for r in range(1, m - 1):
            assert len(sparse_mask(m, r)) == sparse_position_count(m, r)


@given(st.integers(3, 12), st.data())
def test_position_count(m, data):
    r = data.draw(st.integers(1, m - 2))
    assert sparse_position_count(m, r) == comb(m + 1, 2) - zero_count(r)


@pytest.mark.parametrize("m", [3, 4])
def test_quadric(m):
    rep = quadric_report(m)
    assert rep.divisible and rep.outside_span
    h = clone_quadric(m)
    assert all(hat(m - 1, m - 1) not in g.variables() for g in dual_ladder_clone(m).generators)
    assert hat(m - 1, m - 1) in h.variables()


@pytest.mark.invariant
def test_polar_ladder_m3_r1():
    P = polar_ladder_sparse(3, 1)
    assert [str(g) for g in P.generators] == ["y12^2 - y11*y22"]
    assert all(polar_ladder_vanishing(3, 1))


@pytest.mark.invariant
@pytest.mark.parametrize("m,r", [(4, 1), (4, 2), (5, 1), (5, 2)])
def test_polar_ladder_vanishes_identically(m, r):
    flags = polar_ladder_vanishing(m, r)
    assert flags and all(flags)


def test_polar_ladder_is_not_vacuous():
    # a generic symmetric matrix's cofactors do not kill the polar ladder minors
    M = build(md_clone(3))
    images = substitute_cofactors(polar_ladder_sparse(3, 1), M)
    assert not all(p.is_zero() for p in images)


@pytest.mark.parametrize("m", [3, 4])
def test_hypersurface_equation(m):
    rep = hypersurface_equation_report(m)
    assert rep.vanishes and rep.adj_adj_equal
    assert rep.degree == m - 1


def test_multiplicity_m3_exact():
    _, f = det_of(md_clone(3))
    rep = hessian_multiplicity(f)
    assert (rep.k, rep.residual_degree) == (1, 2) == (expected_multiplicity(3), 2)
    assert not rep.probabilistic


@pytest.mark.invariant
def test_multiplicity_methods_agree_m3():
    _, f = det_of(md_clone(3))
    a = hessian_multiplicity(f)
    b = hessian_multiplicity(f, method="line_restriction")
    assert (a.k, a.residual_degree) == (b.k, b.residual_degree)
    assert b.probabilistic


def test_multiplicity_m4_line_restriction():
    _, f = det_of(md_clone(4))
    rep = hessian_multiplicity(f, method="line_restriction")
    assert rep.k == 4 == expected_multiplicity(4)


def test_sparse_m3_has_vanishing_hessian():
    _, f = det_of(sparse(3, 1))
    assert hessian_multiplicity(f).vanishing_hessian
    assert hessian_multiplicity(f, method="line_restriction").vanishing_hessian


def test_unknown_multiplicity_method():
    _, f = det_of(md_clone(3))
    with pytest.raises(ValueError):
        hessian_multiplicity(f, method="guess")


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(0, 4))
def test_order_at_zero_recovers_power_of_t(coeffs, k):
    poly = [0] * k + coeffs
    values = [sum(c * t ** d for d, c in enumerate(poly)) for t in range(len(poly) + 2)]
    want = next((d for d, c in enumerate(poly) if c), None)
    assert _order_at_zero(values) == want


@pytest.mark.invariant
def test_gorenstein_table():
    for m in range(3, 13):
        for r in range(1, m - 1):
            assert gorenstein_check(m, r) == (r == m - 2)
    assert gorenstein_check(4, 2) and not gorenstein_check(4, 1)
    with pytest.raises(ValueError):
        gorenstein_check(4, 3)


def test_minor_system_support():
    ring = symmetric_ring(3, "y")
    bad = MinorSystem(frozenset({hat(1, 1)}), 2, [ring.gen(1, 2) * ring.gen(1, 1)], ring)
    assert not bad.supported()
