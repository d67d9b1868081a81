import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import FLAVORS, polynomials, trees
from nalg.expr import parse_polynomial as P
from nalg.magma import (ASSOCIATIVE, COMMUTATIVE, MAGMA, ONE, FlavorMismatch, MultiplicationOperator,
                        Polynomial, apply_operator, canonicalize, compare, degree, enumerate_monomials,
                        is_canonical, leading_term, multidegree, partial_derivative)


def brute_derivative(m, k, flavor):
    """Sum over leaves equal to x_k of the tree with that leaf replaced by 1."""
    out = {}

    def walk(t, rebuild):
        if isinstance(t, int):
            if t == k:
                w = canonicalize(rebuild(ONE), flavor)
                out[w] = out.get(w, 0) + 1
            return
        if t == ONE:
            return
        if flavor is ASSOCIATIVE:
            for i, j in enumerate(t):
                walk(j, lambda s, i=i: tuple(t[:i]) + ((s,) if s != ONE else ()) + tuple(t[i + 1:]))
            return
        left, right = t
        walk(left, lambda s: rebuild(_graft(s, right)))
        walk(right, lambda s: rebuild(_graft(left, s)))

    walk(m, lambda s: s)
    return Polynomial(out, flavor)


def _graft(a, b):
    if a == ONE:
        return b
    if b == ONE:
        return a
    return (a, b)


def test_canonicalize_examples():
    assert canonicalize((1, 2), MAGMA) == (1, 2)
    assert canonicalize((2, 1), COMMUTATIVE) == (1, 2)
    assert canonicalize(((1, 2), 3), ASSOCIATIVE) == (1, 2, 3)
    assert canonicalize((1, (2, 3)), ASSOCIATIVE) == (1, 2, 3)


@given(trees(), st.sampled_from(FLAVORS))
def test_canonicalize_idempotent(t, flavor):
    c = canonicalize(t, flavor)
    assert canonicalize(c, flavor) == c
    assert is_canonical(c, flavor)


def test_multiply_examples():
    x1, x2 = Polynomial.var(1), Polynomial.var(2)
    assert x1 * x1 == P("(x x)")
    assert (x1 + x2) * x1 == P("(x1 x1) + (x2 x1)")
    assert Polynomial.var(2, COMMUTATIVE) * Polynomial.var(1, COMMUTATIVE) == P("(x1 x2)", COMMUTATIVE)
    one = Polynomial.one()
    assert one * x2 == x2 * one == x2


def test_flavor_mismatch():
    with pytest.raises(FlavorMismatch):
        Polynomial.var(1, MAGMA) * Polynomial.var(1, COMMUTATIVE)


def test_derivative_examples():
    assert P("x2").derivative(1) == Polynomial.zero()
    assert P("x2").derivative(2) == Polynomial.one()
    assert P("(x (x x))").derivative(1) == P("3*(x x)")
    assert P("(x1 x2) - (x2 x1)").derivative(1) == Polynomial.zero()


@settings(max_examples=150)
@given(trees(nvars=2, max_degree=6), st.sampled_from(FLAVORS), st.integers(1, 2))
def test_derivative_matches_leaf_removal(t, flavor, k):
    m = canonicalize(t, flavor)
    assert partial_derivative(Polynomial({m: 1}, flavor, canonical=True), k) == brute_derivative(m, k, flavor)


@settings(max_examples=100)
@given(st.sampled_from(FLAVORS).flatmap(lambda fl: st.tuples(polynomials(fl), polynomials(fl))), st.integers(1, 3))
def test_leibniz(pq, k):
    f, g = pq
    assert (f * g).derivative(k) == f.derivative(k) * g + f * g.derivative(k)


@settings(max_examples=100)
@given(polynomials(), st.integers(1, 3), st.integers(1, 3))
def test_derivatives_commute(f, k, l):
    assert f.derivative(k).derivative(l) == f.derivative(l).derivative(k)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_euler_count(flavor):
    for n in range(1, 8):
        for m in enumerate_monomials((n,), flavor):
            d = Polynomial({m: 1}, flavor, canonical=True).derivative(1)
            assert sum(d.terms.values()) == n


def test_order_examples():
    chain = ["x", "(x x)", "((x x) x)", "(x (x x))"]
    monos = [next(iter(P(s))) for s in chain]
    for a, b in zip(monos, monos[1:]):
        assert compare(a, b) == -1
    a, b, c = (next(iter(P(s))) for s in ["(((x x) x) x)", "((x (x x)) x)", "((x x) (x x))"])
    assert compare(a, b) == -1 and compare(b, c) == -1
    assert compare(b, b) == 0


def test_order_is_total_up_to_degree_5():
    monos = [m for n in range(6) for m in enumerate_monomials((n,), MAGMA)]
    assert len(set(monos)) == len(monos)
    for u, v in itertools.product(monos, repeat=2):
        assert compare(u, v) == -compare(v, u)
        assert (compare(u, v) == 0) == (u == v)
    ranked = sorted(monos, key=lambda m: [compare(m, o) for o in monos].count(1))
    for u, v, w in itertools.combinations(ranked, 3):
        assert compare(u, v) == compare(v, w) == compare(u, w) == -1


def test_leading_term_examples():
    assert leading_term(P("x + (x (x x))")) == (next(iter(P("(x (x x))"))), 1)
    assert leading_term(P("3*(x x) - x")) == ((1, 1), 3)
    f = P("x + (x x)")
    assert leading_term(f * P("x")) == (((1, 1), 1), 1)
    with pytest.raises(ValueError):
        leading_term(Polynomial.zero())


@settings(max_examples=150)
@given(polynomials(MAGMA, nonzero=True, nvars=2), polynomials(MAGMA, nonzero=True, nvars=2))
def test_leading_term_multiplicative(f, g):
    (u, a), (v, b) = leading_term(f), leading_term(g)
    assert leading_term(f * g) == ((u, v) if u != ONE and v != ONE else (v if u == ONE else u), a * b)


@settings(max_examples=60)
@given(polynomials(COMMUTATIVE), polynomials(COMMUTATIVE))
def test_commutative_law(p, q):
    assert p * q == q * p


@settings(max_examples=60)
@given(polynomials(ASSOCIATIVE, max_degree=3), polynomials(ASSOCIATIVE, max_degree=3),
       polynomials(ASSOCIATIVE, max_degree=3))
def test_associative_law(p, q, r):
    assert (p * q) * r == p * (q * r)


def test_magma_has_neither_law():
    x, y = P("x1"), P("x2")
    assert (x * x) * x != x * (x * x)
    assert x * y != y * x


def test_operators():
    x = P("x")
    R, L = MultiplicationOperator.right(x), MultiplicationOperator.left(x)
    assert apply_operator(R, x) == P("(x x)")
    assert apply_operator(L, P("(x x)")) == P("(x (x x))")
    assert apply_operator(R ** 3, Polynomial.one()) == P("((x x) x)")
    assert apply_operator(MultiplicationOperator.identity(), x) == x
    assert (R @ L)(x) == P("(x (x x))")
    assert (R + L * 2)(x) == P("3*(x x)")


def test_enumeration_counts():
    assert [len(enumerate_monomials((n,), MAGMA)) for n in range(1, 9)] == [1, 1, 2, 5, 14, 42, 132, 429]
    assert all(len(enumerate_monomials((n,), ASSOCIATIVE)) == 1 for n in range(8))
    assert [len(enumerate_monomials((n,), COMMUTATIVE)) for n in range(1, 9)] == [1, 1, 1, 2, 3, 6, 11, 23]
    assert len(enumerate_monomials((2, 1), MAGMA)) == 6


@pytest.mark.parametrize("flavor", FLAVORS)
def test_enumeration_is_sorted_and_canonical(flavor):
    for d in [(4,), (2, 2), (1, 1, 1)]:
        monos = enumerate_monomials(d, flavor)
        assert all(compare(a, b, flavor) == -1 for a, b in zip(monos, monos[1:]))
        assert all(is_canonical(m, flavor) and multidegree(m, len(d)) == d for m in monos)


def test_polynomial_basics():
    p = Polynomial([(1, 2), (1, -2)])
    assert not p and p.degree() == -1
    q = P("2*(x1 x2) + 1/3")
    assert q.degree() == 2 and q.nvars() == 2 and q.coefficient(ONE) == Fraction(1, 3)
    assert q.truncate(0) == Polynomial.constant(Fraction(1, 3))
    assert (q / 2).coefficient((1, 2)) == 1
    assert degree(ONE) == 0
