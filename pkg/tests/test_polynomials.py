"""Subtree polynomials, branch decompositions, and the ratio inequality."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ktrees import core, oracle, polynomials as P
from ktrees.errors import NotAdjacent, NotATree
from ktrees.verify import tree_adjacency

STAR = {1: {2, 3, 4}, 2: {1}, 3: {1}, 4: {1}}
P4 = {1: {2}, 2: {1, 3}, 3: {2, 4}, 4: {3}}
P2 = {1: {2}, 2: {1}}
K1 = {1: set()}


def test_int_polynomial_basics():
    x = P.IntPolynomial.x()
    p = (x + P.IntPolynomial.const(1)) * x  # x + x^2
    assert p.coeffs == (0, 1, 1)
    assert p.derivative().coeffs == (1, 2)
    assert p(1) == 2 and p(2) == 6
    assert p.shift(2).coeffs == (0, 0, 0, 1, 1)
    assert str(p) == "x + x^2"
    assert P.IntPolynomial((1, 0, 0)).coeffs == (1,)


def test_rational_rendering():
    assert P.format_rational(Fraction(5, 2)) == "5/2 (2.500000)"
    assert P.format_rational(Fraction(2)) == "2/1 (2.000000)"
    assert P.format_decimal(Fraction(23, 11)) == "2.090909"
    # round-half-even at the sixth digit
    assert P.format_decimal(Fraction(1, 2 * 10**6)) == "0.000000"
    assert P.format_decimal(Fraction(3, 2 * 10**6)) == "0.000002"


def test_subtree_poly_examples():
    assert P.subtree_poly_at_vertex(K1, 1).coeffs == (0, 1)  # x
    center = P.subtree_poly_at_vertex(STAR, 1)
    assert center.coeffs == (0, 1, 3, 3, 1)  # x(1+x)^3
    assert center(1) == 8 and center.derivative()(1) == 20
    leaf = P.subtree_poly_at_vertex(STAR, 2)
    assert leaf(1) == 5 and leaf.derivative()(1) == 13


def test_local_mean_examples():
    assert P.local_mean_order_vertex(STAR, 1) == Fraction(5, 2)
    assert P.local_mean_order_vertex(STAR, 2) == Fraction(13, 5)
    assert P.local_mean_order_vertex(STAR, 2) > P.local_mean_order_vertex(STAR, 1)
    assert P.local_mean_order_vertex(P4, 2) == Fraction(5, 2)
    assert P.local_mean_order_vertex(K1, 1) == 1


def test_global_examples():
    assert P.global_subtree_poly(P4)(1) == 10
    assert P.global_mean_order_tree(P4) == 2  # (n+2)/3 with n=4
    assert P.global_subtree_poly(K1).coeffs == (0, 1)
    assert P.global_mean_order_tree(K1) == 1
    star_poly = P.global_subtree_poly(STAR)
    assert star_poly(1) == 11
    assert P.global_mean_order_tree(STAR) == Fraction(23, 11)


def test_not_a_tree_errors():
    with pytest.raises(NotATree):
        P.subtree_poly_at_vertex({1: {2, 3}, 2: {1, 3}, 3: {1, 2}}, 1)  # cycle
    with pytest.raises(NotATree):
        P.global_subtree_poly({1: {2}, 2: {1}, 3: set()})  # disconnected
    with pytest.raises(NotATree):
        P.subtree_poly_at_vertex({1: {2}, 2: {1, 3}, 3: {2}}, 9)  # missing vertex


def test_branch_decomposition_examples():
    d = P.branch_decomposition(P2, 1, 2)
    assert d.alphas == () and d.betas == ()
    assert d.alpha == 1 and d.beta == 1

    d = P.branch_decomposition(P4, 2, 3)
    assert d.alphas == (1,) and d.betas == (1,)
    assert d.alpha == 2 and d.beta == 2

    d = P.branch_decomposition(STAR, 1, 2)
    assert d.alphas == (1, 1) and d.alpha == 4 and d.beta == 1

    with pytest.raises(NotAdjacent):
        P.branch_decomposition(P4, 1, 3)


def test_local_mean_via_branches_examples():
    d = P.branch_decomposition(P2, 1, 2)
    assert P.local_mean_via_branches(d, 1) == Fraction(3, 2)
    d = P.branch_decomposition(P4, 2, 3)
    assert P.local_mean_via_branches(d, 2) == Fraction(5, 2)
    d = P.branch_decomposition(STAR, 1, 2)
    assert P.local_mean_via_branches(d, 1) == Fraction(5, 2)


def test_jamison_ratio_examples():
    lhs, rhs, tight = P.jamison_ratio_check(K1, 1)
    assert (lhs, rhs, tight) == (Fraction(1, 2), Fraction(1, 2), True)
    p3 = {1: {2}, 2: {1, 3}, 3: {2}}
    lhs, rhs, tight = P.jamison_ratio_check(p3, 1)
    assert (lhs, rhs, tight) == (Fraction(3, 2), Fraction(3, 2), True)
    lhs, rhs, tight = P.jamison_ratio_check(STAR, 1)
    assert (lhs, rhs, tight) == (Fraction(20, 9), Fraction(4, 1), False)


def test_poly_matches_oracle_and_bounds(small_trees):
    for T in small_trees:
        adj = tree_adjacency(T)
        full = oracle.enumerate_sub_ktrees(T)
        for u in adj:
            fast = P.subtree_poly_at_vertex(adj, u)
            assert fast == full.restricted((u,)).poly()
            assert all(c >= 0 for c in fast.coeffs)
            mu = P.local_mean_order_vertex(adj, u)
            assert 1 <= mu <= T.n


def test_branch_reconstruction_and_cross_path(small_trees):
    for T in small_trees:
        adj = tree_adjacency(T)
        for u in sorted(adj):
            direct = P.subtree_poly_at_vertex(adj, u)
            for v in sorted(adj[u]):
                d = P.branch_decomposition(adj, u, v)
                assert d.phi_at_one(u) == direct(1)
                assert d.phi_prime_at_one(u) == direct.derivative()(1)
                assert P.local_mean_via_branches(d, u) == P.local_mean_order_vertex(
                    adj, u
                )
                assert P.local_mean_via_branches(d, v) == P.local_mean_order_vertex(
                    adj, v
                )


def test_branch_ratio_bound(small_trees):
    # each branch satisfies phi'/(1+phi) <= phi/2
    for T in small_trees:
        adj = tree_adjacency(T)
        for u in sorted(adj):
            for v in sorted(adj[u]):
                d = P.branch_decomposition(adj, u, v)
                for a, da in zip(d.alphas, d.alpha_primes):
                    assert Fraction(da, 1 + a) <= Fraction(a, 2)


def test_global_bound_equality_on_paths(small_trees):
    for T in small_trees:
        adj = tree_adjacency(T)
        mu = P.global_mean_order_tree(adj)
        bound = Fraction(T.n + 2, 3)
        assert mu >= bound
        is_path = all(len(vs) <= 2 for vs in adj.values())
        assert (mu == bound) == is_path


def test_jamison_tightness_predicate(small_trees):
    from ktrees.kelmans_ops import path_with_leaf_predicate

    for T in small_trees:
        adj = tree_adjacency(T)
        for u in adj:
            lhs, rhs, tight = P.jamison_ratio_check(adj, u)
            assert lhs <= rhs
            assert tight == path_with_leaf_predicate(adj, u)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=1, max_value=12), seed=st.integers(0, 2**32))
def test_random_tree_properties(n, seed):
    T = core.random_ktree(1, n, seed)
    adj = tree_adjacency(T)
    mu = P.global_mean_order_tree(adj)
    assert Fraction(n + 2, 3) <= mu <= n
    for u in adj:
        lhs, rhs, _ = P.jamison_ratio_check(adj, u)
        assert lhs <= rhs
