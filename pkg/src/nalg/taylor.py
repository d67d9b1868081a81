"""Taylor expansions with constant coefficients.

Every element ``r`` in variables ``x1 < ... < xm`` is uniquely

    r = sum_a  r_a ρ_1^{a_1} ... ρ_m^{a_m}

with constants ``r_a`` (annihilated by every ∂_k) and ``ρ_j`` the right
multiplication by ``x_j``; operators act left to right, so ``ρ_1`` is applied
first.  No factorials appear in this convention.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .magma import (Flavor, MultiplicationOperator, Polynomial, apply_operator, multidegree,
                    partial_derivative, right_power)

Exponent = Tuple[int, ...]


class NonConstantCoefficient(ValueError):
    pass


class FamilyError(ValueError):
    pass


def constant_remainder(r: Polynomial, k: int = 1) -> Polynomial:
    """``r - (∂_k r) ρ_k/1! + (∂_k² r) ρ_k²/2! - ...``, which ∂_k annihilates."""
    total = r
    deriv = r
    p = 0
    while True:
        p += 1
        deriv = partial_derivative(deriv, k)
        if not deriv:
            return total
        term = right_power(deriv, k, p).scale(Fraction((-1) ** p, factorial(p)))
        total = total + term


@dataclass(frozen=True)
class TaylorExpansion:
    flavor: Flavor
    nvars: int
    coefficients: Dict[Exponent, Polynomial] = field(default_factory=dict)

    def __post_init__(self):
        for a, c in self.coefficients.items():
            if len(a) != self.nvars:
                raise ValueError(f"exponent {a} does not have {self.nvars} entries")
            if c.flavor is not self.flavor:
                raise ValueError("coefficient flavor differs from the expansion flavor")
            if not c.is_constant():
                raise NonConstantCoefficient(f"coefficient at {a} is not a constant: {c}")

    def __getitem__(self, a: Exponent) -> Polynomial:
        return self.coefficients.get(tuple(a), Polynomial.zero(self.flavor))

    def __len__(self):
        return len(self.coefficients)

    def items(self):
        return sorted(self.coefficients.items())

    def to_json(self) -> dict:
        from .expr import polynomial_to_json
        return {
            "flavor": self.flavor.value,
            "nvars": self.nvars,
            "coefficients": [{"exponent": list(a), "coefficient": polynomial_to_json(c)}
                             for a, c in self.items()],
        }


def _expand_in(r: Polynomial, k: int) -> Dict[int, Polynomial]:
    """Coefficients of ``r = sum_a r_a ρ_k^a`` with ∂_k r_a = 0."""
    out = {}
    deriv, a = r, 0
    while deriv:
        c = constant_remainder(deriv, k)
        if c:
            out[a] = c.scale(Fraction(1, factorial(a)))
        a += 1
        deriv = partial_derivative(deriv, k)
    return out


def taylor_expand(r: Polynomial, nvars: Optional[int] = None) -> TaylorExpansion:
    """Expand in the highest-indexed variable first, then the lower ones."""
    m = max(r.nvars(), 1) if nvars is None else nvars
    if m < r.nvars():
        raise ValueError(f"polynomial mentions x{r.nvars()} but nvars={m}")
    layer: Dict[Exponent, Polynomial] = {(): r} if r else {}
    for k in range(m, 0, -1):
        nxt = {}
        for tail, coeff in layer.items():
            for a, c in _expand_in(coeff, k).items():
                nxt[(a,) + tail] = c
        layer = nxt
    return TaylorExpansion(r.flavor, m, layer)


def taylor_reconstruct(e: TaylorExpansion) -> Polynomial:
    total = Polynomial.zero(e.flavor)
    for a, c in e.coefficients.items():
        if not c.is_constant():
            raise NonConstantCoefficient(f"coefficient at {a} is not a constant")
        term = c
        for j, aj in enumerate(a, 1):
            term = right_power(term, j, aj)
        total = total + term
    return total


# --------------------------------------------------------------------------
# general operator families

OperatorRule = Callable[[int, int, Flavor], MultiplicationOperator]


def operator_at_one(op: MultiplicationOperator) -> Fraction:
    """The scalar obtained by putting every variable equal to 1 in ``op``."""
    total = Fraction(0)
    for c, word in op.words:
        prod = c
        for _, u in word:
            prod *= sum(u.terms.values(), Fraction(0))
        total += prod
    return total


class OperatorFamily:
    """Operators ``μ_{jk}`` (variable ``x_j``, degree ``k``) in the multiplication algebra.

    ``rule(j, k, flavor)`` builds ``μ_{jk}``.  Every operator used is checked
    once: it must be homogeneous of degree ``k``, mention only ``x_j`` and
    have a nonzero value at 1.
    """

    def __init__(self, rule: OperatorRule, name: str = "custom"):
        self.rule = rule
        self.name = name
        self._cache: Dict[Tuple[int, int, Flavor], Tuple[MultiplicationOperator, Fraction]] = {}

    def __repr__(self):
        return f"OperatorFamily({self.name})"

    def get(self, j: int, k: int, flavor: Flavor) -> Tuple[MultiplicationOperator, Fraction]:
        key = (j, k, flavor)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        op = self.rule(j, k, flavor)
        for c, word in op.words:
            total = 0
            for _, u in word:
                if u.flavor is not flavor:
                    raise FamilyError(f"μ_{j},{k} has an atom of the wrong flavor")
                if set(u.variables()) - {j}:
                    raise FamilyError(f"μ_{j},{k} mentions variables other than x{j}")
                if not u.is_homogeneous() or not u:
                    raise FamilyError(f"μ_{j},{k} has a non-homogeneous atom")
                total += u.degree()
            if total != k:
                raise FamilyError(f"μ_{j},{k} has a word of degree {total}, expected {k}")
        value = operator_at_one(op)
        if value == 0:
            raise FamilyError(f"μ_{j},{k}(1) = 0")
        self._cache[key] = (op, value)
        return op, value

    def operator(self, j: int, k: int, flavor: Flavor) -> MultiplicationOperator:
        return self.get(j, k, flavor)[0]

    def value_at_one(self, j: int, k: int, flavor: Flavor) -> Fraction:
        return self.get(j, k, flavor)[1]

    def apply(self, r: Polynomial, exponent: Exponent) -> Polynomial:
        """``r μ_{1 a_1} ... μ_{m a_m}`` (μ_1 applied first)."""
        for j, a in enumerate(exponent, 1):
            if a:
                r = apply_operator(self.operator(j, a, r.flavor), r)
        return r

    # stock families
    @classmethod
    def right_powers(cls) -> "OperatorFamily":
        return cls(lambda j, k, fl: MultiplicationOperator.right(Polynomial.var(j, fl)) ** k, "right-powers")

    @classmethod
    def jordan(cls) -> "OperatorFamily":
        def rule(j, k, fl):
            x = Polynomial.var(j, fl)
            return (MultiplicationOperator.left(x) + MultiplicationOperator.right(x)) ** k
        return cls(rule, "jordan")

    @classmethod
    def power_of(cls, base: Iterable[Tuple[object, List[Tuple[str, str]]]], name: str = "power") -> "OperatorFamily":
        """``μ_{jk} = B_j^k`` for a degree-1 combination ``B`` of words.

        ``base`` lists ``(coeff, [(side, expr), ...])`` with one-variable
        expressions in ``x``; ``x`` is renamed to ``x_j``.
        """
        from .expr import parse_polynomial
        base = [(Fraction(c), list(word)) for c, word in base]

        def rule(j, k, fl):
            b = None
            for c, word in base:
                atoms = [(side, parse_polynomial(e, fl).rename({1: j})) for side, e in word]
                w = MultiplicationOperator(atoms, c)
                b = w if b is None else b + w
            return b ** k
        return cls(rule, name)

    @classmethod
    def from_json(cls, obj) -> "OperatorFamily":
        """Build a family from a JSON config.

        ``{"family": "right-powers"}``, ``{"family": "jordan"}`` or
        ``{"family": "power", "base": [{"coeff": "1", "word": [["L", "x"]]}, ...]}``.
        """
        if isinstance(obj, str):
            obj = json.loads(obj)
        kind = obj.get("family")
        if kind == "right-powers":
            return cls.right_powers()
        if kind == "jordan":
            return cls.jordan()
        if kind == "power":
            base = [(t.get("coeff", "1"), [tuple(a) for a in t["word"]]) for t in obj["base"]]
            return cls.power_of(base)
        raise FamilyError(f"unknown operator family {kind!r}")


def _dominated(d: Exponent):
    if not d:
        yield ()
        return
    for e0 in range(d[0] + 1):
        for rest in _dominated(d[1:]):
            yield (e0,) + rest


def generalized_expand(r: Polynomial, fam: OperatorFamily, nvars: Optional[int] = None) -> Dict[Exponent, Polynomial]:
    """Coefficients ``r_a`` (constants) with ``r = sum_a r_a μ_{1a_1}...μ_{ma_m}``.

    Solved exactly, one multidegree at a time, over the spanning set
    ``{b μ_{1a_1}...μ_{ma_m}}`` where ``b`` runs over constants bases.
    """
    from . import linalg
    from .constants import constants_basis

    flavor = r.flavor
    m = max(r.nvars(), 1) if nvars is None else nvars
    by_degree: Dict[Exponent, Dict] = {}
    for mono, c in r.items():
        by_degree.setdefault(multidegree(mono, m), {})[mono] = c

    out: Dict[Exponent, Polynomial] = {}
    for d, terms in sorted(by_degree.items()):
        spanning: List[Tuple[Exponent, Polynomial, Polynomial]] = []
        for e in _dominated(d):
            a = tuple(di - ei for di, ei in zip(d, e))
            for b in constants_basis(e, flavor).basis:
                spanning.append((a, b, fam.apply(b, a)))
        index: Dict = {}
        for _, _, img in spanning:
            for mono in img:
                index.setdefault(mono, len(index))
        for mono in terms:
            index.setdefault(mono, len(index))
        rows: List[Dict[int, Fraction]] = [dict() for _ in index]
        for col, (_, _, img) in enumerate(spanning):
            for mono, c in img.items():
                rows[index[mono]][col] = c
        rhs = [Fraction(0)] * len(index)
        for mono, c in terms.items():
            rhs[index[mono]] = c
        z = linalg.solve(rows, len(spanning), rhs)
        if z is None:
            raise RuntimeError(f"no presentation found in multidegree {d}; the family or the "
                               f"constants computation is inconsistent")
        for (a, b, _), zi in zip(spanning, z):
            if zi:
                out[a] = out.get(a, Polynomial.zero(flavor)) + b.scale(zi)
    return {a: c for a, c in out.items() if c}


def generalized_reconstruct(coefficients: Dict[Exponent, Polynomial], fam: OperatorFamily,
                            flavor: Flavor) -> Polynomial:
    total = Polynomial.zero(flavor)
    for a, c in coefficients.items():
        total = total + fam.apply(c, a)
    return total
