"""Algebras of constants: kernels of the formal derivatives, the one-variable
integrated-word basis and free generators, and the generating series that
count them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .magma import (MAGMA, Flavor, Monomial, MultiDegree, Polynomial,
                    degree, enumerate_monomials, mono_derivative, multidegrees)
from .taylor import constant_remainder

X2 = (1, 1)


@dataclass(frozen=True)
class ConstantsBasis:
    flavor: Flavor
    multidegree: MultiDegree
    basis: Tuple[Polynomial, ...]
    component_dim: int
    rank: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def derivation_matrix(d: Sequence[int], flavor: Flavor) -> Tuple[List[Monomial], List[Dict[int, int]]]:
    """Monomials of multidegree ``d`` (ascending ``≺``) and the stacked matrix of
    all ∂_k on that component, one sparse row per (k, target monomial)."""
    d = tuple(d)
    cols = enumerate_monomials(d, flavor)
    rows: Dict[Tuple[int, Monomial], Dict[int, int]] = {}
    for j, u in enumerate(cols):
        for k in range(1, len(d) + 1):
            if not d[k - 1]:
                continue
            for w, c in mono_derivative(u, k, flavor).items():
                rows.setdefault((k, w), {})[j] = c
    return cols, list(rows.values())


@lru_cache(maxsize=256)
def _constants_basis(d: MultiDegree, flavor: Flavor) -> ConstantsBasis:
    cols, rows = derivation_matrix(d, flavor)
    kernel = linalg.nullspace(rows, len(cols))
    basis = tuple(Polynomial._raw({cols[c]: v for c, v in vec.items()}, flavor) for vec in kernel)
    return ConstantsBasis(flavor, d, basis, len(cols), len(cols) - len(basis))


def constants_basis(d: Sequence[int], flavor: Flavor = MAGMA) -> ConstantsBasis:
    """Exact basis of the constants of multidegree ``d``.

    Each element has leading coefficient 1, the leading monomials are
    distinct, and the list is sorted by leading monomial.  Results are cached.
    """
    return _constants_basis(tuple(int(e) for e in d), Flavor.parse(flavor))


def constants_dimension(d: Sequence[int], flavor: Flavor = MAGMA) -> int:
    return constants_basis(d, flavor).dimension


# --------------------------------------------------------------------------
# one variable, free magma

def _as_monomial(u) -> Monomial:
    if isinstance(u, Polynomial):
        if len(u) != 1 or next(iter(u.items()))[1] != 1:
            raise ValueError("integrated_word expects a single word")
        u = next(iter(u))
    return u


def integrated_word(u) -> Polynomial:
    """``φ(u) = Σ_p (-1)^p (d^p u/dx^p) ρ^p / p!`` for a one-variable word ``u``."""
    u = _as_monomial(u)
    p = Polynomial({u: 1}, MAGMA)
    if set(p.variables()) - {1}:
        raise ValueError("integrated_word is defined for one-variable magma words only")
    return constant_remainder(p, 1)


def ends_in_x(u: Monomial) -> bool:
    """True for words of the form ``v·x`` (``x`` itself counts, with ``v = 1``)."""
    if u == 1:
        return True
    return isinstance(u, tuple) and len(u) == 2 and u[1] == 1


def one_var_constant_basis(n: int) -> List[Polynomial]:
    return [integrated_word(u) for u in enumerate_monomials((n,), MAGMA) if not ends_in_x(u)]


GENERATOR_FORMS = ("v(x^2)", "x w", "(x^2) w", "(v1 x) w", "v (w1 x)")


def generator_forms(u: Monomial) -> Tuple[str, ...]:
    """Which of the five generator shapes the word ``u`` has."""
    if not (isinstance(u, tuple) and len(u) == 2):
        return ()
    a, b = u
    da, db = degree(a), degree(b)
    found = []
    if b == X2 and da >= 2:
        found.append(GENERATOR_FORMS[0])
    if a == 1 and db >= 2:
        found.append(GENERATOR_FORMS[1])
    if a == X2 and db >= 2:
        found.append(GENERATOR_FORMS[2])
    if isinstance(a, tuple) and a and a[1] == 1 and degree(a[0]) >= 2 and db >= 2:
        found.append(GENERATOR_FORMS[3])
    if isinstance(b, tuple) and b and b[1] == 1 and degree(b[0]) >= 2 and da >= 2:
        found.append(GENERATOR_FORMS[4])
    return tuple(found)


@dataclass(frozen=True)
class Generator:
    word: Monomial
    element: Polynomial
    forms: Tuple[str, ...]


@dataclass(frozen=True)
class GeneratorSet:
    degree: int
    elements: Tuple[Generator, ...]

    def __len__(self):
        return len(self.elements)

    def polynomials(self) -> List[Polynomial]:
        return [g.element for g in self.elements]


@lru_cache(maxsize=None)
def free_generators(n: int) -> GeneratorSet:
    """Integrated words ``φ(u)`` over degree-``n`` words of one of the five shapes."""
    if n < 3:
        raise ValueError("free generators start in degree 3")
    out = []
    for u in enumerate_monomials((n,), MAGMA):
        forms = generator_forms(u)
        if forms:
            out.append(Generator(u, integrated_word(u), forms))
    return GeneratorSet(n, tuple(out))


# --------------------------------------------------------------------------
# series tables

@dataclass(frozen=True)
class SeriesTable:
    name: str
    coefficients: Dict
    alternate: Optional[Dict] = None
    note: str = ""

    @property
    def consistent(self) -> bool:
        return self.alternate is None or self.alternate == self.coefficients

    def __getitem__(self, key):
        return self.coefficients[key]

    def values(self) -> List[int]:
        return [self.coefficients[k] for k in sorted(self.coefficients)]


def catalan_numbers(N: int) -> List[int]:
    """c_0..c_N from c_n = Σ_{p=1}^{n-1} c_p c_{n-p} with c_0 = c_1 = 1."""
    c = [1, 1][:N + 1]
    for n in range(2, N + 1):
        c.append(sum(c[p] * c[n - p] for p in range(1, n)))
    return c


def catalan_closed(n: int) -> int:
    if n == 0:
        return 1
    return comb(2 * n - 2, n - 1) // n


def _catalan_compose(g: List[int], N: int) -> List[int]:
    """Coefficients of c(g(t)) = Σ_n c_n g(t)^n for g with g(0) = 0."""
    c = catalan_numbers(N)
    out = [0] * (N + 1)
    power = [1] + [0] * N
    for n in range(N + 1):
        if n:
            power = [sum(power[i] * g[k - i] for i in range(k + 1)) for k in range(N + 1)]
        if not any(power):
            break
        for k in range(N + 1):
            out[k] += c[n] * power[k]
    return out


def generator_counts_closed(N: int) -> List[int]:
    c = catalan_numbers(max(N, 2))
    g = [0] * (N + 1)
    if N >= 3:
        g[3] = 1
    for n in range(4, N + 1):
        g[n] = 3 * (c[n - 1] - c[n - 2])
    return g


def generator_counts_series(N: int) -> List[int]:
    """g(t) = -3t² + t³ + 3t(1 - t)(c(t) - 1), expanded."""
    c = catalan_numbers(N)
    cm1 = [0] + c[1:]
    g = [0] * (N + 1)
    for n in range(N + 1):
        g[n] = 3 * ((cm1[n - 1] if n >= 1 else 0) - (cm1[n - 2] if n >= 2 else 0))
    if N >= 2:
        g[2] -= 3
    if N >= 3:
        g[3] += 1
    return g


def commutative_hilbert(m: int, N: int) -> Dict[MultiDegree, int]:
    """Counts per multidegree from H = Σ t_j + ½H² + ½H(t²), plus 1 in degree 0."""
    h: Dict[MultiDegree, Fraction] = {}
    zero = (0,) * m
    for n in range(1, N + 1):
        for d in multidegrees(m, n):
            if n == 1:
                h[d] = Fraction(1)
                continue
            s = Fraction(0)
            for d1, v1 in list(h.items()):
                d2 = tuple(a - b for a, b in zip(d, d1))
                if min(d2) < 0 or d2 == zero:
                    continue
                s += v1 * h.get(d2, 0)
            half = tuple(a // 2 for a in d) if all(a % 2 == 0 for a in d) else None
            if half is not None:
                s += h.get(half, 0)
            h[d] = s / 2
    out = {zero: 1}
    for d, v in h.items():
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral count at {d}")
        if v:
            out[d] = int(v)
    return out


def _multinomial(d: Sequence[int]) -> int:
    out = factorial(sum(d))
    for e in d:
        out //= factorial(e)
    return out


def associative_constants_count(d: Sequence[int]) -> int:
    """Coefficient of t^d in Π(1 - t_j) / (1 - Σ t_j)."""
    d = tuple(d)
    support = [j for j, e in enumerate(d) if e]
    total = 0
    for mask in range(1 << len(support)):
        e = list(d)
        bits = 0
        for i, j in enumerate(support):
            if mask >> i & 1:
                e[j] -= 1
                bits += 1
        total += (-1) ** bits * _multinomial(e)
    return total


def series(name: str, N: int, m: int = 1) -> SeriesTable:
    """Exact integer coefficients ``0..N`` of a named generating series.

    Where two expressions are known, ``alternate`` holds the second.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if name == "catalan":
        rec = catalan_numbers(N)
        return SeriesTable(name, dict(enumerate(rec)), {n: catalan_closed(n) for n in range(N + 1)},
                           "recursion vs binomial formula")
    if name == "gamma":
        c = catalan_numbers(N)
        gam = {n: c[n] - (c[n - 1] if n else 0) for n in range(N + 1)}
        comp = _catalan_compose(generator_counts_closed(N), N)
        return SeriesTable(name, gam, dict(enumerate(comp)), "(1 - t) c(t) vs c(g(t))")
    if name == "generators":
        return SeriesTable(name, dict(enumerate(generator_counts_closed(N))),
                           dict(enumerate(generator_counts_series(N))), "closed form vs series expression")
    if name == "magmaHilb":
        c = catalan_numbers(N)
        coeffs = {d: c[n] * _multinomial(d) for n in range(N + 1) for d in multidegrees(m, n)}
        g = [0, 1] + [0] * max(N - 1, 0)
        comp = _catalan_compose(g[:N + 1], N)
        alt = {d: comp[sum(d)] * _multinomial(d) for d in coeffs}
        return SeriesTable(name, coeffs, alt, "Catalan table vs c(g(T)) with g = Σ t_j")
    if name == "commHilb":
        coeffs = commutative_hilbert(m, N)
        return SeriesTable(name, {d: coeffs.get(d, 0) for n in range(N + 1) for d in multidegrees(m, n)},
                           None, "H = Σ t_j + ½H² + ½H(t²)")
    if name == "assocConstHilb":
        coeffs = {d: associative_constants_count(d) for n in range(N + 1) for d in multidegrees(m, n)}
        return SeriesTable(name, coeffs, None, "Π(1 - t_j)/(1 - Σ t_j)")
    raise ValueError(f"unknown series {name!r}")


SERIES_NAMES = ("catalan", "gamma", "generators", "magmaHilb", "commHilb", "assocConstHilb")


# --------------------------------------------------------------------------
# verifications

def _dominated(d):
    if not d:
        yield ()
        return
    for e0 in range(d[0] + 1):
        for rest in _dominated(d[1:]):
            yield (e0,) + rest


@dataclass
class HilbertRow:
    multidegree: MultiDegree
    component_dim: int
    constants_sum: int

    @property
    def ok(self) -> bool:
        return self.component_dim == self.constants_sum


@dataclass
class HilbertReport:
    flavor: Flavor
    nvars: int
    max_degree: int
    rows: List[HilbertRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def verify_hilbert_product(flavor: Flavor, m: int, D: int) -> HilbertReport:
    """Check dim R^(d) = Σ_{e ≤ d} dim R_0^(e) for every multidegree of total ≤ D."""
    flavor = Flavor.parse(flavor)
    report = HilbertReport(flavor, m, D)
    for n in range(D + 1):
        for d in multidegrees(m, n):
            lhs = len(enumerate_monomials(d, flavor))
            rhs = sum(constants_dimension(e, flavor) for e in _dominated(d))
            report.rows.append(HilbertRow(d, lhs, rhs))
    return report


def _to_row(p: Polynomial, index: Dict[Monomial, int]) -> Dict[int, Fraction]:
    return {index.setdefault(m, len(index)): c for m, c in p.items()}


@dataclass
class SpanRow:
    degree: int
    elements: int
    rank: int
    constants_dim: int

    @property
    def spans(self) -> bool:
        return self.rank == self.constants_dim

    @property
    def independent(self) -> bool:
        return self.rank == self.elements


def generator_products(D: int) -> Dict[int, List[Polynomial]]:
    """All bracketings of free generators, grouped by total degree ≤ D (1 in degree 0)."""
    out: Dict[int, List[Polynomial]] = {n: [] for n in range(D + 1)}
    out[0].append(Polynomial.one(MAGMA))
    for n in range(3, D + 1):
        out[n].extend(free_generators(n).polynomials())
        for p in range(3, n - 2):
            for a in out[p]:
                for b in out[n - p]:
                    out[n].append(a * b)
    return out


def span_check_generators(D: int) -> List[SpanRow]:
    if D < 3:
        raise ValueError("D must be at least 3")
    products = generator_products(D)
    report = []
    for n in range(D + 1):
        index: Dict[Monomial, int] = {}
        rows = [_to_row(p, index) for p in products[n]]
        r = linalg.rank(rows, len(index)) if rows else 0
        report.append(SpanRow(n, len(rows), r, constants_dimension((n,), MAGMA)))
    return report
