"""Bundled verification suites.

Each suite returns a list of :class:`Check` records holding the expected and
computed values side by side; a failing check is reported, never raised.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from .constants import (catalan_numbers, commutative_hilbert, constants_basis, constants_dimension,
                        associative_constants_count, free_generators, series, span_check_generators,
                        verify_hilbert_product)
from .expr import parse_polynomial
from .magma import ASSOCIATIVE, COMMUTATIVE, MAGMA, Flavor, Polynomial, enumerate_monomials, multidegrees
from .reptheory import Decomposition, constants_decomposition
from .series import (LinearODE, RootData, TruncatedElement, fit_homogeneous_constants,
                     homogeneous_general_solution, nonassoc_exponential, ode_residual, solve_linear_ode)

FLAVORS = (MAGMA, COMMUTATIVE, ASSOCIATIVE)


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    computed: object
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "expected": _plain(self.expected), "computed": _plain(self.computed),
                "passed": self.passed}

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: expected {self.expected}, computed {self.computed}"


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return str(v)


def _eq(name: str, expected, computed) -> Check:
    return Check(name, expected, computed, expected == computed)


# --------------------------------------------------------------------------

def hilbert_suite() -> List[Check]:
    checks = []
    c = catalan_numbers(10)
    for n in range(11):
        checks.append(_eq(f"magma constants dim, degree {n} (c_n - c_n-1)",
                          c[n] - (c[n - 1] if n else 0), constants_dimension((n,), MAGMA)))
    for flavor in FLAVORS:
        for m in (1, 2):
            rep = verify_hilbert_product(flavor, m, 6)
            bad = [r.multidegree for r in rep.rows if not r.ok]
            checks.append(Check(f"{flavor.value} m={m}: dim R^(d) = sum of constants dims, |d| <= 6",
                                [], bad, rep.ok))
    for name in ("catalan", "gamma", "generators"):
        t = series(name, 10)
        checks.append(Check(f"series {name}: two expressions agree", t.values(),
                            [t.alternate[k] for k in sorted(t.alternate)], t.consistent))
    checks.append(_eq("free generator counts g_3..g_7", [1, 3, 9, 27, 84],
                      [len(free_generators(n)) for n in range(3, 8)]))
    for row in span_check_generators(6):
        checks.append(Check(f"generator products span constants, degree {row.degree}",
                            row.constants_dim, row.rank, row.spans))
    comm = commutative_hilbert(1, 8)
    checks.append(_eq("commutative one-variable counts", [1, 1, 1, 2, 3, 6, 11, 23],
                      [comm.get((n,), 0) for n in range(1, 9)]))
    for m in (1, 2):
        rec = commutative_hilbert(m, 8)
        enum = {d: len(enumerate_monomials(d, COMMUTATIVE)) for n in range(9) for d in multidegrees(m, n)}
        checks.append(_eq(f"commutative series vs enumeration, m={m}, degree <= 8", enum,
                          {d: rec.get(d, 0) for d in enum}))
    for n in range(7):
        for d in multidegrees(2, n):
            checks.append(_eq(f"associative constants dim {d}", associative_constants_count(d),
                              constants_dimension(d, ASSOCIATIVE)))
    b = constants_basis((1, 1), ASSOCIATIVE).basis
    checks.append(_eq("associative (1,1) constants basis",
                      [str(parse_polynomial("(x1 x2) - (x2 x1)", ASSOCIATIVE))], [str(p) for p in b]))
    return checks


# --------------------------------------------------------------------------

TABLES: Dict[Flavor, Dict[int, Dict[tuple, int]]] = {
    MAGMA: {
        2: {(1, 1): 1},
        3: {(3,): 1, (2, 1): 3, (1, 1, 1): 1},
        4: {(4,): 3, (3, 1): 10, (2, 2): 7, (2, 1, 1): 10, (1, 1, 1, 1): 4},
    },
    COMMUTATIVE: {
        2: {},
        3: {(2, 1): 1},
        4: {(4,): 1, (3, 1): 1, (2, 2): 1},
    },
}


def decompositions_suite(max_k: int = 5) -> List[Check]:
    checks = []
    for flavor, table in TABLES.items():
        for k, mults in table.items():
            expected = str(Decomposition.of(k, mults))
            for method in ("kernel", "recursion"):
                checks.append(_eq(f"{flavor.value} C^({k}) by {method}", expected,
                                  str(constants_decomposition(k, flavor, method))))
    for flavor in (MAGMA, COMMUTATIVE):
        for k in range(max_k + 1):
            a = constants_decomposition(k, flavor, "kernel")
            b = constants_decomposition(k, flavor, "recursion")
            checks.append(_eq(f"{flavor.value} C^({k}): kernel = recursion", str(b), str(a)))
    c = catalan_numbers(max_k)
    for k in range(1, max_k + 1):
        checks.append(_eq(f"magma C^({k}) trivial multiplicity = c_k - c_k-1", c[k] - c[k - 1],
                          constants_decomposition(k, MAGMA, "kernel")[(k,)]))
    return checks


# --------------------------------------------------------------------------

def _random_rational(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, 3))


def random_one_var_polynomial(rng: random.Random, flavor: Flavor, max_degree: int, terms: int = 4) -> Polynomial:
    out = Polynomial.zero(flavor)
    for _ in range(terms):
        n = rng.randint(0, max_degree)
        out = out + Polynomial.monomial(rng.choice(enumerate_monomials((n,), flavor)),
                                        _random_rational(rng), flavor)
    return out


def random_constant(rng: random.Random, flavor: Flavor, max_degree: int = 5) -> Polynomial:
    """A random combination of constants of degrees ``0..max_degree`` in ``x``."""
    out = Polynomial.constant(_random_rational(rng), flavor)
    for n in range(2, max_degree + 1):
        for b in constants_basis((n,), flavor).basis:
            if rng.random() < 0.4:
                out = out + b.scale(_random_rational(rng))
    return out


def random_ode(rng: random.Random, flavor: Flavor, N: int) -> LinearODE:
    n = rng.randint(1, 3)
    rhs = TruncatedElement.from_polynomial(random_one_var_polynomial(rng, flavor, 6), N)
    return LinearODE.make([_random_rational(rng) for _ in range(n)], rhs,
                          [random_constant(rng, flavor) for _ in range(n)])


def random_root_data(rng: random.Random) -> RootData:
    n = rng.randint(1, 3)
    roots: Dict[Fraction, int] = {}
    for _ in range(n):
        lam = _random_rational(rng, 3)
        roots[lam] = roots.get(lam, 0) + 1
    return RootData.make(sorted(roots.items()))


def ode_suite(N: int = 10, count: int = 100, systems: int = 20, seed: int = 20240) -> List[Check]:
    rng = random.Random(seed)
    checks = []
    failures = 0
    for i in range(count):
        flavor = FLAVORS[i % 3]
        ode = random_ode(rng, flavor, N)
        res = ode_residual(ode, solve_linear_ode(ode, N).materialize())
        failures += bool(res)
    checks.append(_eq(f"zero residual through degree N-n, {count} random ODEs, N={N}", 0, failures))

    zero_ok = True
    for flavor in FLAVORS:
        for n in (1, 2, 3):
            ode = LinearODE.make([_random_rational(rng) for _ in range(n)], TruncatedElement.zero(N, flavor),
                                 [Polynomial.zero(flavor)] * n)
            zero_ok &= not solve_linear_ode(ode, N).materialize()
    checks.append(_eq("zero data gives the zero solution", True, zero_ok))

    agree = 0
    for i in range(systems):
        flavor = FLAVORS[i % 3]
        roots = random_root_data(rng)
        coeffs = roots.characteristic_coefficients()
        init = [random_constant(rng, flavor) for _ in range(roots.order)]
        via_roots = homogeneous_general_solution(roots, fit_homogeneous_constants(roots, init), N, coeffs)
        via_rec = solve_linear_ode(LinearODE.make(coeffs, TruncatedElement.zero(N, flavor), init), N)
        agree += via_roots == via_rec
    checks.append(_eq(f"homogeneous formula = recursion, {systems} rational-root systems", systems, agree))
    return checks


# --------------------------------------------------------------------------

E2 = "1/2*(x x)"
E3 = "1/12*(x (x x)) + 1/12*((x x) x)"


def exp_suite(N: int = 8) -> List[Check]:
    E = nonassoc_exponential(N)
    one = TruncatedElement.from_polynomial(Polynomial.one(MAGMA), N)
    return [
        _eq(f"E' - E = 0 through degree {N - 1}", "0", str((E.derivative() - E.truncate(N - 1)).to_polynomial())),
        _eq("E(0) = 1", "1", str(E[0])),
        _eq(f"E E - E(2x) = 0 through degree {N}", "0", str((E * E - E.scale_substitute(2)).to_polynomial())),
        _eq("e_0 + e_1 = 1 + x", str((one + TruncatedElement.from_polynomial(Polynomial.var(1), N)).to_polynomial()),
            str(E[0] + E[1])),
        _eq("e_2", str(parse_polynomial(E2)), str(E[2])),
        _eq("e_3", str(parse_polynomial(E3)), str(E[3])),
    ]


SUITES: Dict[str, Callable[[], List[Check]]] = {
    "hilbert": hilbert_suite,
    "decompositions": decompositions_suite,
    "ode": ode_suite,
    "exp": exp_suite,
}


def run(suite: str) -> Dict[str, List[Check]]:
    if suite == "all":
        return {name: fn() for name, fn in SUITES.items()}
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    return {suite: SUITES[suite]()}
