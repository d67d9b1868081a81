import random
from fractions import Fraction
from math import factorial

import pytest

from helpers import random_polynomial
from nalg.expr import parse_polynomial as P
from nalg.magma import COMMUTATIVE, MAGMA, Flavor, Polynomial, right_power
from nalg.series import (LinearODE, RootData, TaylorSeries, TruncatedElement, TruncationMismatch, exp_rho,
                         fit_homogeneous_constants, homogeneous_general_solution, nonassoc_exponential,
                         ode_residual, solve_linear_ode, to_taylor_series)
from nalg.verify import random_constant, random_ode, random_root_data

ONE = Polynomial.one()
ZERO = Polynomial.zero()


def T(text, N, flavor=MAGMA):
    return TruncatedElement.from_polynomial(P(text, flavor), N)


def exp_sum(N, flavor=MAGMA):
    """Σ x^n/n! with left-normed powers."""
    return TruncatedElement.from_polynomial(
        sum((right_power(Polynomial.one(flavor), 1, n).scale(Fraction(1, factorial(n))) for n in range(N + 1)),
            Polynomial.zero(flavor)), N)


def test_arithmetic():
    a = T("1 + x", 3)
    assert a * a == T("1 + 2*x + (x x)", 3)
    assert T("1/2*(x x)", 3).scale_substitute(2) == T("2*(x x)", 3)
    top = T("((x x) x)", 3)
    assert not (top * top)
    with pytest.raises(TruncationMismatch):
        T("x", 2) + T("x", 3)
    with pytest.raises(ValueError):
        TruncatedElement([P("x")], 3)


def test_derivative_and_truncate():
    a = T("(x (x x)) + x", 4)
    assert a.derivative() == T("3*(x x) + 1", 3)
    assert a.truncate(1) == T("x", 1)


def test_to_taylor_series():
    s = to_taylor_series(exp_sum(6))
    assert all(c == ONE for c in s.coefficients)
    s = to_taylor_series(T("(x (x x))", 5))
    assert s[0] == P("(x (x x)) - ((x x) x)") and s[3] == P("6")
    assert all(not s[k] for k in (1, 2, 4, 5))
    c = P("(x (x x)) - ((x x) x) + 2")
    s = to_taylor_series(TruncatedElement.from_polynomial(c, 4))
    assert s[0] == c and not any(s.coefficients[1:])


@pytest.mark.parametrize("flavor", list(Flavor))
def test_taylor_series_materializes_back(flavor):
    rng = random.Random(11)
    for _ in range(10):
        f = TruncatedElement.from_polynomial(random_polynomial(rng, flavor, nvars=1, max_degree=6), 6)
        assert to_taylor_series(f).materialize() == f


def test_ode_examples():
    N = 10
    y = solve_linear_ode(LinearODE.make([-1], TruncatedElement.zero(N), [ONE]))
    assert all(c == ONE for c in y.coefficients)
    assert y.materialize() == exp_sum(N)
    y = solve_linear_ode(LinearODE.make([0, 1], TruncatedElement.zero(N), [ONE, ZERO]))
    assert [y[k] for k in range(8)] == [P(s) for s in ["1", "0", "-1", "0", "1", "0", "-1", "0"]]
    y = solve_linear_ode(LinearODE.make([2, 3], TruncatedElement.zero(N), [ZERO, ZERO]))
    assert not y.materialize()
    c0 = P("(x (x x)) - ((x x) x)")
    y = solve_linear_ode(LinearODE.make([-1], TruncatedElement.zero(N), [c0]))
    assert all(y[k] == c0 for k in range(N - 3 + 1))


def test_ode_validation():
    with pytest.raises(ValueError):
        LinearODE.make([], TruncatedElement.zero(4), [])
    with pytest.raises(ValueError):
        LinearODE.make([1], TruncatedElement.zero(4), [P("x")])
    with pytest.raises(ValueError):
        LinearODE.make([1, 1], TruncatedElement.zero(4), [ONE])


@pytest.mark.parametrize("flavor", list(Flavor))
def test_random_residuals(flavor):
    rng = random.Random(5)
    for _ in range(15):
        ode = random_ode(rng, flavor, 9)
        assert not ode_residual(ode, solve_linear_ode(ode).materialize())


def test_linearity_and_uniqueness():
    rng = random.Random(9)
    N = 8
    for flavor in (MAGMA, COMMUTATIVE):
        a = random_ode(rng, flavor, N)
        b = LinearODE(a.coefficients, TruncatedElement.from_polynomial(P("(x x) - 2*x", flavor), N),
                      tuple(random_constant(rng, flavor) for _ in a.coefficients))
        both = LinearODE(a.coefficients, a.rhs + b.rhs.scale(3),
                         tuple(p + q.scale(3) for p, q in zip(a.initial, b.initial)))
        ya, yb, yab = (solve_linear_ode(o).materialize() for o in (a, b, both))
        assert yab == ya + yb.scale(3)
        again = solve_linear_ode(LinearODE(a.coefficients, a.rhs, a.initial))
        assert again.materialize() == ya


def test_exp_rho():
    c = P("(x (x x)) - ((x x) x)")
    assert exp_rho(0, 6).apply(c).materialize() == TruncatedElement.from_polynomial(c, 6)
    assert exp_rho(1, 8).apply(ONE) == solve_linear_ode(LinearODE.make([-1], TruncatedElement.zero(8), [ONE]))
    rng = random.Random(2)
    for _ in range(5):
        c = random_constant(rng, MAGMA)
        y = exp_rho(Fraction(2, 3), 8).apply(c).materialize()
        assert y.derivative() == y.truncate(7).scale(Fraction(2, 3))


def test_root_data():
    r = RootData.make([(1, 2), (0, 1)])
    co = r.characteristic_coefficients()
    assert co == (-2, 1, 0)
    r.validate(co)
    with pytest.raises(ValueError):
        r.validate((-1, 0, 0))
    with pytest.raises(ValueError):
        RootData.make([(1, 1), (1, 1)])
    with pytest.raises(ValueError):
        RootData.make([(1, 1)]).validate((-1, 0))


def test_homogeneous_examples():
    N = 10
    r = RootData.make([(1, 1)])
    y = homogeneous_general_solution(r, {(0, 0): ONE}, N, (-1,))
    assert y == solve_linear_ode(LinearODE.make([-1], TruncatedElement.zero(N), [ONE]))
    r = RootData.make([(0, 3)])
    consts = {(0, 0): ONE, (0, 1): P("2"), (0, 2): P("(x (x x)) - ((x x) x)")}
    y = homogeneous_general_solution(r, consts, N, (0, 0, 0))
    ode = LinearODE.make([0, 0, 0], TruncatedElement.zero(N), [y[0], y[1], y[2]])
    assert not ode_residual(ode, y.materialize())
    r = RootData.make([(1, 2)])
    y = homogeneous_general_solution(r, {(0, 0): ONE, (0, 1): ONE}, N, (-2, 1))
    ode = LinearODE.make([-2, 1], TruncatedElement.zero(N), [y[0], y[1]])
    assert not ode_residual(ode, y.materialize())
    with pytest.raises(ValueError):
        homogeneous_general_solution(r, {(0, 0): ONE}, N, (-1, 1))


def test_path_agreement():
    rng = random.Random(4)
    for i in range(10):
        flavor = list(Flavor)[i % 3]
        roots = random_root_data(rng)
        co = roots.characteristic_coefficients()
        init = [random_constant(rng, flavor) for _ in co]
        y = homogeneous_general_solution(roots, fit_homogeneous_constants(roots, init), 8, co)
        assert y == solve_linear_ode(LinearODE.make(co, TruncatedElement.zero(8, flavor), init), 8)


def test_exponential():
    E = nonassoc_exponential(8)
    assert E[0] == ONE and E[1] == P("x")
    assert E[2] == P("1/2*(x x)")
    assert E[3] == P("1/12*(x (x x)) + 1/12*((x x) x)")
    assert E[4] == P("1/168*(x (x (x x))) + 1/168*(x ((x x) x)) + 1/168*((x (x x)) x) + 1/168*(((x x) x) x)"
                     " + 1/56*((x x) (x x))")
    assert E.derivative() == E.truncate(7)
    assert E * E == E.scale_substitute(2)
    with pytest.raises(ValueError):
        nonassoc_exponential(4, COMMUTATIVE)


def test_taylor_series_invariants():
    with pytest.raises(ValueError):
        TaylorSeries(MAGMA, 1, (P("x"), ONE))
    with pytest.raises(ValueError):
        TaylorSeries(MAGMA, 2, (ONE, P("(x (x x)) - ((x x) x)"), ZERO))
