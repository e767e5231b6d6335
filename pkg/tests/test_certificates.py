import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import symbols_for, to_sympy
from symdegen.calculus import gradient
from symdegen.certificates import (
    BudgetExceeded, CodimCertificate, antidiagonal_initial_check, antidiagonal_initial_report,
    clone_codim_certificate, clone_m4_monomials, disjoint_support_codim, displayed_clone_initials,
    expand_combination, graded_piece, monomial_ideal_codim, sparse_codim_certificate,
    sparse_membership_witness,
)
from symdegen.polyring import hat, monomials_of_degree, symmetric_ring
from symdegen.symmatrix import antidiagonal_product, build, cofactors, determinant, md_clone, sparse


def clone_gradient(m):
    M = build(md_clone(m))
    return M, gradient(determinant(M), M.variables).generators


def groebner_initials(gens, d):
    """in(J)_d from a sympy grevlex Groebner basis, in the variables the generators use."""
    ring = gens[0].ring
    support = sorted({ring.var_index(v) for g in gens for v in g.variables()})
    G = sympy.groebner([to_sympy(g) for g in gens], *symbols_for(ring), order="grevlex")
    leads = [sympy.Poly(g, *symbols_for(ring)).monoms(order="grevlex")[0] for g in G.exprs]
    return {u for u in monomials_of_degree(ring, d, support)
            if any(all(a >= b for a, b in zip(u, lm)) for lm in leads)}


@pytest.mark.invariant
@pytest.mark.parametrize("d", [2, 3, 4])
def test_graded_piece_matches_groebner_m3(d):
    _, gens = clone_gradient(3)
    assert graded_piece(gens, d).monomials() == groebner_initials(gens, d)


@pytest.mark.invariant
def test_graded_piece_matches_groebner_m4_cubics():
    _, gens = clone_gradient(4)
    assert graded_piece(gens, 3).monomials() == groebner_initials(gens, 3)


@pytest.mark.invariant
def test_graded_piece_combinations_expand_to_their_initials():
    _, gens = clone_gradient(3)
    piece = graded_piece(gens, 3)
    for mono, combo in piece.initials.items():
        assert expand_combination(gens, combo).leading_monomial() == mono


def test_graded_piece_budget():
    _, gens = clone_gradient(4)
    with pytest.raises(BudgetExceeded):
        graded_piece(gens, 4, max_rows=10)


def test_graded_piece_below_generator_degree_is_empty():
    _, gens = clone_gradient(4)
    assert graded_piece(gens, 2).monomials() == set()


@pytest.mark.parametrize("m", [3, 4])
def test_listed_monomials_are_initials(m):
    rep = clone_codim_certificate(m)
    assert rep.members_ok and not rep.missing
    assert rep.bound == 3


def test_m4_listed_monomials_degrees():
    ring = symmetric_ring(4)
    degrees = sorted(sum(u) for u in clone_m4_monomials(ring))
    assert degrees == [3] * 9 + [4] * 4


def test_m4_monomials_overlap_so_transversal_is_used():
    rep = clone_codim_certificate(4)
    assert rep.certificate.method == "transversal"
    with pytest.raises(ValueError):
        disjoint_support_codim(rep.certificate)


@pytest.mark.parametrize("m", [5, 6, 7, 8])
def test_displayed_initial_terms(m):
    M, gens = clone_gradient(m)
    for v, (coeff, mono) in displayed_clone_initials(m, M.ring).items():
        c, lm = gens[M.variables.index(v)].leading_term()
        assert lm == mono and abs(c) == coeff
    rep = clone_codim_certificate(m)
    assert rep.displayed_match and rep.members_ok and rep.bound == 3


def test_displayed_initial_signs_frozen():
    # computed signs of in(f11), in(f1m), in(f_{m-1,m-1}) for m = 5..8
    want = {5: (1, 2, 1), 6: (1, -2, 1), 7: (-1, -2, -1), 8: (-1, 2, -1)}
    for m, signs in want.items():
        M, gens = clone_gradient(m)
        got = tuple(gens[M.variables.index(v)].leading_term()[0] for v in displayed_clone_initials(m, M.ring))
        assert got == signs


def test_displayed_initials_need_m5():
    with pytest.raises(ValueError):
        displayed_clone_initials(4, symmetric_ring(4))


def test_witnesses_must_match_monomials():
    ring = symmetric_ring(3)
    u = ring.monomial({hat(1, 1): 1})
    good = CodimCertificate([u], [ring.gen(1, 1) + ring.gen(2, 2)])
    bad = CodimCertificate([u], [ring.gen(2, 2) + ring.gen(3, 3)])
    assert good.witnesses_ok() and not bad.witnesses_ok()


def test_disjoint_codim_examples():
    ring = symmetric_ring(3)
    one = ring.monomial({hat(1, 2): 2})
    assert disjoint_support_codim(CodimCertificate([one], [])) == 1
    clash = ring.monomial({hat(1, 2): 1, hat(3, 3): 1})
    with pytest.raises(ValueError):
        disjoint_support_codim(CodimCertificate([one, clash], []))


@given(st.lists(st.lists(st.integers(0, 2), min_size=6, max_size=6).map(tuple), min_size=1, max_size=5))
def test_transversal_bounds(monos):
    monos = [u for u in monos if any(u)]
    if not monos:
        return
    h = monomial_ideal_codim(monos)
    assert 1 <= h <= min(len(monos), 6)
    # a pairwise disjoint subfamily never exceeds the height
    chosen, seen = [], set()
    for u in monos:
        s = {k for k, e in enumerate(u) if e}
        if not s & seen:
            chosen.append(u)
            seen |= s
    assert len(chosen) <= h


@pytest.mark.invariant
@pytest.mark.parametrize("m,r", [(4, 1), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3)])
def test_membership_witness(m, r):
    w = sparse_membership_witness(m, r)
    assert w.verify()
    assert len(w.multiplier.terms) == 1 and w.multiplier.is_homogeneous()


def test_membership_multiplier_examples():
    assert str(sparse_membership_witness(4, 1).multiplier) == "x34^2"
    assert str(sparse_membership_witness(5, 2).multiplier) == "x35^2"
    assert str(sparse_membership_witness(6, 3).multiplier) == "x36^2*x45^2"


def test_membership_witness_needs_room():
    with pytest.raises(ValueError):
        sparse_membership_witness(4, 2)


@pytest.mark.invariant
@pytest.mark.parametrize("m,r", [(m, r) for m in (3, 4, 5, 6) for r in range(1, m - 1)])
def test_sparse_codim(m, r):
    rep = sparse_codim_certificate(m, r)
    assert rep.expected_initials_ok
    assert rep.certificate.witnesses_ok()
    if m - r == 2:
        assert rep.containment_ok and rep.codim == 2
    else:
        assert rep.lower_bound == 3 and rep.witness.verify()


@pytest.mark.parametrize("m,r", [(m, r) for m in (3, 4, 5) for r in range(1, m - 1)])
def test_sparse_antidiagonal_initials(m, r):
    M = build(sparse(m, r))
    for k in (m - 2, m - 1, m):
        if k >= 1:
            rep = antidiagonal_initial_report(M, k)
            assert rep["ok"], rep["failures"][:3]
            assert rep["checked"] > 0


@pytest.mark.parametrize("k", [4, 5, 6])
def test_clone_antidiagonal_initials_m6(k):
    assert antidiagonal_initial_check(build(md_clone(6)), k)


def test_clone_antidiagonal_needs_m6():
    M = build(md_clone(5))
    with pytest.raises(ValueError):
        antidiagonal_initial_check(M, 3)
    assert not antidiagonal_initial_check(M, 3, allow_small=True)


def test_clone_top_left_cofactor_initial_m6():
    M = build(md_clone(6))
    c, mono = cofactors(M)(1, 1).leading_term()
    want = antidiagonal_product(M, range(2, 7), range(2, 7))
    assert abs(c) == 1 and mono == want.leading_monomial()
