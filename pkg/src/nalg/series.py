"""Truncated power series in one variable and linear ODEs with constant
coefficients.

Solutions are written in the divided-power convention

    y = c_0 + c_1 ρ/1! + c_2 ρ²/2! + ...

with constants ``c_k`` and ``ρ`` the right multiplication by ``x``.  This
differs from :mod:`nalg.taylor`, whose coefficients carry no factorials:
``c_k = k! * r_k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .magma import MAGMA, Flavor, Polynomial, degree, right_power
from .taylor import taylor_expand


class TruncationMismatch(ValueError):
    pass


def _homogeneous_parts(p: Polynomial) -> Dict[int, Polynomial]:
    parts: Dict[int, dict] = {}
    for m, c in p.items():
        parts.setdefault(degree(m), {})[m] = c
    return {n: Polynomial._raw(t, p.flavor) for n, t in parts.items()}


class TruncatedElement:
    """``h_0 + h_1 + ... + h_N`` with ``h_n`` homogeneous of degree ``n`` in ``x``.

    Degrees above ``N`` are discarded by every operation.
    """

    __slots__ = ("flavor", "N", "components")

    def __init__(self, components: Sequence[Polynomial], N: int, flavor: Flavor = MAGMA):
        self.flavor = Flavor.parse(flavor)
        self.N = N
        comps = [Polynomial.zero(self.flavor) for _ in range(N + 1)]
        for n, h in enumerate(components):
            if n > N:
                continue
            if h.flavor is not self.flavor:
                raise ValueError("component flavor mismatch")
            if set(h.variables()) - {1}:
                raise ValueError("truncated elements live in one variable")
            for m in h:
                if degree(m) != n:
                    raise ValueError(f"component {n} has a term of degree {degree(m)}")
            comps[n] = h
        self.components = tuple(comps)

    @classmethod
    def from_polynomial(cls, p: Polynomial, N: int) -> "TruncatedElement":
        parts = _homogeneous_parts(p)
        return cls([parts.get(n, Polynomial.zero(p.flavor)) for n in range(N + 1)], N, p.flavor)

    @classmethod
    def zero(cls, N: int, flavor: Flavor = MAGMA) -> "TruncatedElement":
        return cls([], N, flavor)

    def to_polynomial(self) -> Polynomial:
        total = Polynomial.zero(self.flavor)
        for h in self.components:
            total = total + h
        return total

    def __getitem__(self, n: int) -> Polynomial:
        return self.components[n]

    def __eq__(self, other):
        if not isinstance(other, TruncatedElement):
            return NotImplemented
        return self.flavor is other.flavor and self.N == other.N and self.components == other.components

    def __bool__(self):
        return any(self.components)

    def __repr__(self):
        return f"TruncatedElement(N={self.N}, {self.to_polynomial()})"

    def _check(self, other: "TruncatedElement"):
        if self.N != other.N:
            raise TruncationMismatch(f"truncation orders differ: {self.N} vs {other.N}")
        if self.flavor is not other.flavor:
            raise ValueError("flavor mismatch")

    def __add__(self, other: "TruncatedElement") -> "TruncatedElement":
        self._check(other)
        return TruncatedElement([a + b for a, b in zip(self.components, other.components)], self.N, self.flavor)

    def __sub__(self, other: "TruncatedElement") -> "TruncatedElement":
        self._check(other)
        return TruncatedElement([a - b for a, b in zip(self.components, other.components)], self.N, self.flavor)

    def __neg__(self):
        return TruncatedElement([-a for a in self.components], self.N, self.flavor)

    def scale(self, c) -> "TruncatedElement":
        return TruncatedElement([a.scale(c) for a in self.components], self.N, self.flavor)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = [Polynomial.zero(self.flavor) for _ in range(self.N + 1)]
        for p, a in enumerate(self.components):
            if not a:
                continue
            for q in range(self.N + 1 - p):
                b = other.components[q]
                if b:
                    out[p + q] = out[p + q] + a * b
        return TruncatedElement(out, self.N, self.flavor)

    __rmul__ = scale

    def scale_substitute(self, alpha) -> "TruncatedElement":
        """Substitute ``x -> alpha x``: component ``n`` is multiplied by ``alpha**n``."""
        alpha = Fraction(alpha)
        return TruncatedElement([h.scale(alpha ** n) for n, h in enumerate(self.components)], self.N, self.flavor)

    def derivative(self) -> "TruncatedElement":
        """d/dx; exact through degree ``N - 1``, so the result has order ``N - 1``."""
        if self.N == 0:
            raise ValueError("cannot differentiate an order-0 truncation")
        return TruncatedElement([self.components[n + 1].derivative(1) for n in range(self.N)], self.N - 1, self.flavor)

    def truncate(self, M: int) -> "TruncatedElement":
        if M > self.N:
            raise TruncationMismatch(f"cannot extend order {self.N} to {M}")
        return TruncatedElement(self.components[:M + 1], M, self.flavor)


def series_add(a: TruncatedElement, b: TruncatedElement) -> TruncatedElement:
    return a + b


def series_multiply(a: TruncatedElement, b: TruncatedElement) -> TruncatedElement:
    return a * b


def scale_substitute(a: TruncatedElement, alpha) -> TruncatedElement:
    return a.scale_substitute(alpha)


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TaylorSeries:
    """``Σ_k c_k ρ^k / k!`` truncated at total degree ``N``.

    ``coefficients[k]`` is a constant whose degree is at most ``N - k``.
    """
    flavor: Flavor
    N: int
    coefficients: Tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.N + 1:
            raise ValueError(f"expected {self.N + 1} coefficients")
        for k, c in enumerate(self.coefficients):
            if c.degree() > self.N - k:
                raise ValueError(f"coefficient {k} exceeds degree {self.N - k}")
            if not c.is_constant():
                raise ValueError(f"coefficient {k} is not a constant")

    def __getitem__(self, k: int) -> Polynomial:
        return self.coefficients[k]

    def materialize(self) -> TruncatedElement:
        total = Polynomial.zero(self.flavor)
        for k, c in enumerate(self.coefficients):
            if c:
                total = total + right_power(c, 1, k).scale(Fraction(1, factorial(k)))
        return TruncatedElement.from_polynomial(total, self.N)

    def __add__(self, other: "TaylorSeries") -> "TaylorSeries":
        if self.N != other.N:
            raise TruncationMismatch("truncation orders differ")
        return TaylorSeries(self.flavor, self.N, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def scale(self, c) -> "TaylorSeries":
        return TaylorSeries(self.flavor, self.N, tuple(a.scale(c) for a in self.coefficients))


def _cap(c: Polynomial, k: int, N: int) -> Polynomial:
    return c.truncate(N - k)


def to_taylor_series(f: TruncatedElement) -> TaylorSeries:
    """Constant coefficients of ``f`` in the divided-power convention."""
    coeffs = [Polynomial.zero(f.flavor) for _ in range(f.N + 1)]
    for n, h in enumerate(f.components):
        if not h:
            continue
        for (a,), r in taylor_expand(h, 1).coefficients.items():
            coeffs[a] = coeffs[a] + r.scale(factorial(a))
    return TaylorSeries(f.flavor, f.N, tuple(coeffs))


@dataclass(frozen=True)
class LinearODE:
    """``y^(n) + a_1 y^(n-1) + ... + a_n y = f`` with initial constants c_0..c_{n-1}."""
    coefficients: Tuple[Fraction, ...]
    rhs: TruncatedElement
    initial: Tuple[Polynomial, ...]

    def __post_init__(self):
        n = len(self.coefficients)
        if n < 1:
            raise ValueError("order must be at least 1")
        if len(self.initial) != n:
            raise ValueError(f"expected {n} initial constants, got {len(self.initial)}")
        for i, c in enumerate(self.initial):
            if c.flavor is not self.rhs.flavor:
                raise ValueError("initial constant flavor mismatch")
            if not c.is_constant():
                raise ValueError(f"initial value c_{i} is not a constant")

    @classmethod
    def make(cls, coefficients: Sequence, rhs: TruncatedElement, initial: Sequence[Polynomial]) -> "LinearODE":
        return cls(tuple(Fraction(a) for a in coefficients), rhs, tuple(initial))

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @property
    def flavor(self) -> Flavor:
        return self.rhs.flavor


def solve_linear_ode(ode: LinearODE, N: Optional[int] = None) -> TaylorSeries:
    """Fill ``c_{j+n} = f_j - a_1 c_{j+n-1} - ... - a_n c_j`` step by step."""
    N = ode.rhs.N if N is None else N
    rhs = ode.rhs if ode.rhs.N == N else TruncatedElement.from_polynomial(ode.rhs.to_polynomial(), N)
    f = to_taylor_series(rhs).coefficients
    n, a = ode.order, ode.coefficients
    c: List[Polynomial] = []
    for k in range(N + 1):
        if k < n:
            c.append(_cap(ode.initial[k], k, N))
            continue
        j = k - n
        val = f[j]
        for i in range(1, n + 1):
            val = val - c[k - i].scale(a[i - 1])
        c.append(_cap(val, k, N))
    return TaylorSeries(ode.flavor, N, tuple(c))


def ode_residual(ode: LinearODE, y: TruncatedElement) -> TruncatedElement:
    """``y^(n) + a_1 y^(n-1) + ... + a_n y - f``, exact through degree ``N - n``."""
    n = ode.order
    M = y.N - n
    if M < 0:
        raise ValueError("truncation order too small for this equation")
    derivs = [y]
    for _ in range(n):
        derivs.append(derivs[-1].derivative())
    total = derivs[n].truncate(M)
    for i, a in enumerate(ode.coefficients, 1):
        total = total + derivs[n - i].truncate(M).scale(a)
    rhs = TruncatedElement.from_polynomial(ode.rhs.to_polynomial(), M)
    return total - rhs


# --------------------------------------------------------------------------
# homogeneous equations

@dataclass(frozen=True)
class ExpRho:
    """``exp(λρ) = Σ λ^k ρ^k / k!`` as a map ``k -> λ^k / k!``."""
    lam: Fraction
    N: int

    def coefficient(self, k: int) -> Fraction:
        return self.lam ** k / factorial(k)

    def apply(self, c: Polynomial) -> TaylorSeries:
        """``c exp(λρ)``: divided-power coefficients ``λ^k c``."""
        return TaylorSeries(c.flavor, self.N, tuple(_cap(c.scale(self.lam ** k), k, self.N) for k in range(self.N + 1)))


def exp_rho(lam, N: int) -> ExpRho:
    return ExpRho(Fraction(lam), N)


@dataclass(frozen=True)
class RootData:
    roots: Tuple[Tuple[Fraction, int], ...]

    def __post_init__(self):
        seen = set()
        for lam, k in self.roots:
            if k < 1:
                raise ValueError("multiplicities must be positive")
            if lam in seen:
                raise ValueError(f"root {lam} listed twice")
            seen.add(lam)

    @classmethod
    def make(cls, pairs: Sequence[Tuple[object, int]]) -> "RootData":
        return cls(tuple((Fraction(lam), int(k)) for lam, k in pairs))

    @property
    def order(self) -> int:
        return sum(k for _, k in self.roots)

    def characteristic_coefficients(self) -> Tuple[Fraction, ...]:
        """``(a_1, ..., a_n)`` of ``Π (λ - λ_i)^{k_i} = λ^n + a_1 λ^{n-1} + ... + a_n``."""
        poly = [Fraction(1)]
        for lam, k in self.roots:
            for _ in range(k):
                poly = [a - lam * b for a, b in zip(poly + [Fraction(0)], [Fraction(0)] + poly)]
        return tuple(poly[1:])

    def validate(self, coefficients: Sequence) -> None:
        """Divide the characteristic polynomial by each ``(λ - λ_i)`` exactly ``k_i`` times."""
        poly = [Fraction(1)] + [Fraction(a) for a in coefficients]
        if self.order != len(coefficients):
            raise ValueError(f"multiplicities sum to {self.order}, equation has order {len(coefficients)}")
        for lam, k in self.roots:
            for _ in range(k):
                quotient, acc = [], Fraction(0)
                for a in poly:
                    acc = acc * lam + a
                    quotient.append(acc)
                if quotient[-1] != 0:
                    raise ValueError(f"{lam} is not a root of multiplicity {k}")
                poly = quotient[:-1]
        if poly != [1]:
            raise ValueError("roots do not account for the whole characteristic polynomial")


def _basis_coefficient(lam: Fraction, j: int, k: int) -> Fraction:
    """Divided-power coefficient of ρ^k in ρ^j exp(λρ): k!/(k-j)! λ^(k-j)."""
    if k < j:
        return Fraction(0)
    return Fraction(factorial(k), factorial(k - j)) * lam ** (k - j)


def homogeneous_general_solution(roots: RootData, constants: Dict[Tuple[int, int], Polynomial], N: int,
                                 coefficients: Optional[Sequence] = None) -> TaylorSeries:
    """``Σ_i (c_i0 + c_i1 ρ + ... + c_{i,k_i-1} ρ^{k_i-1}) exp(λ_i ρ)``.

    ``constants[(i, j)]`` is ``c_ij`` (``i`` indexes ``roots.roots``).
    """
    if coefficients is not None:
        roots.validate(coefficients)
    flavor = next(iter(constants.values())).flavor if constants else MAGMA
    coeffs = [Polynomial.zero(flavor) for _ in range(N + 1)]
    for (i, j), c in constants.items():
        lam, mult = roots.roots[i]
        if not 0 <= j < mult:
            raise ValueError(f"constant index {(i, j)} outside multiplicity {mult}")
        if not c.is_constant():
            raise ValueError(f"c_{i}{j} is not a constant")
        for k in range(j, N + 1):
            w = _basis_coefficient(lam, j, k)
            if w:
                coeffs[k] = coeffs[k] + c.scale(w)
    return TaylorSeries(flavor, N, tuple(_cap(c, k, N) for k, c in enumerate(coeffs)))


def fit_homogeneous_constants(roots: RootData, initial: Sequence[Polynomial]) -> Dict[Tuple[int, int], Polynomial]:
    """Solve for the ``c_ij`` matching the first ``n`` divided-power coefficients."""
    labels = [(i, j) for i, (_, mult) in enumerate(roots.roots) for j in range(mult)]
    n = len(labels)
    if len(initial) != n:
        raise ValueError(f"expected {n} initial constants")
    rows = [{col: _basis_coefficient(roots.roots[i][0], j, k) for col, (i, j) in enumerate(labels)}
            for k in range(n)]
    flavor = initial[0].flavor
    out = {lab: Polynomial.zero(flavor) for lab in labels}
    for k, c in enumerate(initial):
        unit = [Fraction(int(r == k)) for r in range(n)]
        z = linalg.solve(rows, n, unit)
        if z is None:
            raise ArithmeticError("singular initial-value system")
        for col, zc in enumerate(z):
            if zc:
                out[labels[col]] = out[labels[col]] + c.scale(zc)
    return out


# --------------------------------------------------------------------------

def nonassoc_exponential(N: int, flavor: Flavor = MAGMA) -> TruncatedElement:
    """``E`` with ``E(0) = 1``, ``e_1 = x`` and ``E(x)E(x) = E(2x)``.

    Comparing degree-``n`` parts of ``E·E`` and ``E(2x)`` gives
    ``(2^n - 2) e_n = Σ_{p+q=n, p,q≥1} e_p e_q``.
    """
    flavor = Flavor.parse(flavor)
    if flavor is not MAGMA:
        raise ValueError("the exponential is defined here for the free magma algebra only")
    if N < 1:
        raise ValueError("N must be at least 1")
    e = [Polynomial.one(flavor), Polynomial.var(1, flavor)]
    for n in range(2, N + 1):
        s = Polynomial.zero(flavor)
        for p in range(1, n):
            s = s + e[p] * e[n - p]
        e.append(s.scale(Fraction(1, 2 ** n - 2)))
    return TruncatedElement(e, N, flavor)
