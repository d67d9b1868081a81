"""Symmetric-group characters for multilinear components.

Partitions are weakly decreasing tuples of positive ints; ``()`` is the
partition of 0.  A :class:`Decomposition` records the multiplicity of each
irreducible (Specht module / Young diagram) in a representation of ``S_n``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from . import linalg
from .magma import (ASSOCIATIVE, MAGMA, Flavor, Monomial, Polynomial, enumerate_monomials, sort_key,
                    substitute_variables)
from .constants import catalan_numbers, constants_basis

Partition = Tuple[int, ...]


def partitions(n: int, largest: int = None) -> Iterator[Partition]:
    """Partitions of ``n`` in decreasing lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0] if lam else 0))


def dimension(lam: Partition) -> int:
    """Hook length formula."""
    n = sum(lam)
    conj = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j) + (conj[j] - i) - 1
    return factorial(n) // hooks


def centralizer_size(mu: Partition) -> int:
    z = 1
    for part, mult in Counter(mu).items():
        z *= part ** mult * factorial(mult)
    return z


def class_size(mu: Partition) -> int:
    return factorial(sum(mu)) // centralizer_size(mu)


def sign(mu: Partition) -> int:
    return (-1) ** sum(part - 1 for part in mu)


@lru_cache(maxsize=None)
def _mn(beta: Tuple[int, ...], mu: Partition) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beads:
            continue
        height = sum(1 for c in beta if target < c < b)
        new = tuple(sorted((beads - {b}) | {target}, reverse=True))
        total += (-1) ** height * _mn(new, rest)
    return total


def mn_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Irreducible character value χ_λ(μ) by the Murnaghan–Nakayama rule.

    Border strips are removed through the beta-set (abacus) of λ: a strip of
    length r moves one bead down by r, with sign set by the beads jumped.
    """
    lam, mu = tuple(lam), tuple(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError(f"weight mismatch: |{lam}| != |{mu}|")
    ell = len(lam)
    beta = tuple(lam[i] + ell - 1 - i for i in range(ell))
    return _mn(beta, mu)


@dataclass(frozen=True)
class ClassFunction:
    weight: int
    values: Dict[Partition, Fraction]

    def __getitem__(self, mu):
        return self.values.get(tuple(mu), Fraction(0))

    def inner(self, other: "ClassFunction") -> Fraction:
        if self.weight != other.weight:
            raise ValueError("class functions of different weights")
        total = Fraction(0)
        for mu in partitions(self.weight):
            total += class_size(mu) * self[mu] * other[mu]
        return total / factorial(self.weight)

    def as_list(self) -> List[Fraction]:
        """Values on cycle types ordered from the identity class, i.e. (1^n) first."""
        return [self[mu] for mu in reversed(list(partitions(self.weight)))]


def irreducible(lam: Partition) -> ClassFunction:
    n = sum(lam)
    return ClassFunction(n, {mu: Fraction(mn_character(lam, mu)) for mu in partitions(n)})


def regular_character(n: int) -> ClassFunction:
    return ClassFunction(n, {mu: Fraction(factorial(n) if mu == (1,) * n else 0) for mu in partitions(n)})


@dataclass(frozen=True)
class Decomposition:
    weight: int
    multiplicities: Dict[Partition, int] = field(default_factory=dict)

    def __post_init__(self):
        for lam, m in self.multiplicities.items():
            if sum(lam) != self.weight:
                raise ValueError(f"partition {lam} has the wrong weight")
            if m < 0:
                raise ValueError(f"negative multiplicity {m} for {lam}")

    @classmethod
    def of(cls, weight: int, mults: Dict[Partition, int]) -> "Decomposition":
        return cls(weight, {tuple(k): int(v) for k, v in mults.items() if v})

    def __getitem__(self, lam) -> int:
        return self.multiplicities.get(tuple(lam), 0)

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.weight == other.weight and self.items() == other.items()

    def items(self) -> List[Tuple[Partition, int]]:
        """Nonzero multiplicities, partitions in decreasing lexicographic order."""
        return sorted(((k, v) for k, v in self.multiplicities.items() if v), reverse=True)

    @property
    def dimension(self) -> int:
        return sum(m * dimension(lam) for lam, m in self.multiplicities.items())

    def __add__(self, other: "Decomposition") -> "Decomposition":
        out = Counter(self.multiplicities)
        out.update(other.multiplicities)
        return Decomposition.of(self.weight, out)

    def scale(self, k: int) -> "Decomposition":
        return Decomposition.of(self.weight, {lam: k * m for lam, m in self.multiplicities.items()})

    def __str__(self):
        if not self.items():
            return "0"
        return " + ".join((f"{m}" if m != 1 else "") + "[" + ",".join(map(str, lam)) + "]"
                          for lam, m in self.items())


# --------------------------------------------------------------------------

def cycle_permutation(mu: Partition) -> Dict[int, int]:
    """A permutation of 1..n of cycle type ``mu``: consecutive cycles."""
    perm, start = {}, 1
    for part in mu:
        for i in range(part):
            perm[start + i] = start + (i + 1) % part
        start += part
    return perm


def action_character(basis: Sequence[Polynomial], k: int, check: bool = True) -> ClassFunction:
    """Character of ``S_k`` (permuting x1..xk) on the span of ``basis``.

    The span is row reduced once, with columns in decreasing ``≺`` order (a
    kernel basis from :func:`constants_basis` is already reduced that way).
    A permuted vector's coordinates are its entries at the pivot columns; with
    ``check`` the vector is also compared against that combination, which
    detects spans that are not stable.
    """
    basis = list(basis)
    if not basis:
        return ClassFunction(k, {mu: Fraction(0) for mu in partitions(k)})
    flavor = basis[0].flavor
    monos = sorted({m for b in basis for m in b}, key=lambda m: sort_key(m, flavor), reverse=True)
    index = {m: i for i, m in enumerate(monos)}
    rows = [{index[m]: c for m, c in b.items()} for b in basis]
    pivots, red = linalg.rref(rows, len(monos))
    if len(pivots) != len(basis):
        raise ValueError("basis vectors are linearly dependent")
    where = {p: i for i, p in enumerate(pivots)}
    values = {}
    for mu in partitions(k):
        perm = cycle_permutation(mu)
        col_map = [index.get(substitute_variables(m, perm, flavor)) for m in monos]
        trace = Fraction(0)
        for i, r in enumerate(red):
            img = {}
            for c, v in r.items():
                c2 = col_map[c]
                if c2 is None:
                    raise ValueError(f"span is not stable under the permutation of type {mu}")
                img[c2] = v
            trace += img.get(pivots[i], 0)
            if check:
                for c, v in [(c, v) for c, v in img.items() if c in where]:
                    for cc, w in red[where[c]].items():
                        s = img.get(cc, 0) - v * w
                        if s:
                            img[cc] = s
                        else:
                            img.pop(cc, None)
                if img:
                    raise ValueError(f"span is not stable under the permutation of type {mu}")
        values[mu] = trace
    return ClassFunction(k, values)


def decompose(chi: ClassFunction) -> Decomposition:
    mults = {}
    for lam in partitions(chi.weight):
        m = chi.inner(irreducible(lam))
        if m.denominator != 1 or m < 0:
            raise ValueError(f"multiplicity of {lam} is {m}; not the character of a representation")
        if m:
            mults[lam] = int(m)
    return Decomposition(chi.weight, mults)


def horizontal_strips(lam: Partition, r: int) -> Iterator[Partition]:
    """Partitions obtained from ``lam`` by adding ``r`` boxes, no two in one column."""
    lam = tuple(lam)
    rows = len(lam) + 1
    padded = lam + (0,)

    def rec(i: int, left: int, acc: Tuple[int, ...]):
        if i == rows:
            if left == 0:
                yield tuple(p for p in acc if p)
            return
        cap = left if i == 0 else min(left, lam[i - 1] - padded[i])
        for add in range(cap, -1, -1):
            yield from rec(i + 1, left - add, acc + (padded[i] + add,))

    yield from rec(0, r, ())


def pieri_row(d: Decomposition, r: int) -> Decomposition:
    if r < 0:
        raise ValueError("r must be nonnegative")
    out: Counter = Counter()
    for lam, m in d.multiplicities.items():
        for nu in horizontal_strips(lam, r):
            out[nu] += m
    return Decomposition.of(d.weight + r, out)


def regular_decomposition(n: int, copies: int = 1) -> Decomposition:
    return Decomposition.of(n, {lam: copies * dimension(lam) for lam in partitions(n)})


def multilinear_monomials(k: int, flavor: Flavor) -> List[Monomial]:
    return enumerate_monomials((1,) * k, flavor)


@lru_cache(maxsize=None)
def component_decomposition(k: int, flavor: Flavor = MAGMA) -> Decomposition:
    """The multilinear component of degree ``k`` as an ``S_k``-module."""
    flavor = Flavor.parse(flavor)
    if k == 0:
        return Decomposition(0, {(): 1})
    if flavor is MAGMA:
        return regular_decomposition(k, catalan_numbers(k)[k])
    if flavor is ASSOCIATIVE:
        return regular_decomposition(k)
    basis = [Polynomial._raw({m: Fraction(1)}, flavor) for m in multilinear_monomials(k, flavor)]
    return decompose(action_character(basis, k, check=False))


def _kernel_method(k: int, flavor: Flavor) -> Decomposition:
    if k == 0:
        return Decomposition(0, {(): 1})
    basis = constants_basis((1,) * k, flavor).basis
    return decompose(action_character(basis, k))


@lru_cache(maxsize=None)
def _recursion_method(k: int, flavor: Flavor) -> Decomposition:
    if k == 0:
        return Decomposition(0, {(): 1})
    out = Counter(component_decomposition(k, flavor).multiplicities)
    for j in range(k):
        out.subtract(pieri_row(_recursion_method(j, flavor), k - j).multiplicities)
    bad = {lam: m for lam, m in out.items() if m < 0}
    if bad:
        raise ArithmeticError(f"negative multiplicities in degree {k}: {bad}")
    return Decomposition.of(k, out)


def constants_decomposition(k: int, flavor: Flavor = MAGMA, method: str = "kernel") -> Decomposition:
    """Irreducible content of the multilinear constants of degree ``k``.

    ``kernel`` decomposes the character of the computed kernel; ``recursion``
    peels ``⊕_j C^(j) ⊗ row(k-j)`` off the full component with Pieri's rule;
    ``both`` runs the two and insists they agree.
    """
    flavor = Flavor.parse(flavor)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if method == "kernel":
        return _kernel_method(k, flavor)
    if method == "recursion":
        return _recursion_method(k, flavor)
    if method == "both":
        a, b = _kernel_method(k, flavor), _recursion_method(k, flavor)
        if a != b:
            raise ArithmeticError(f"methods disagree in degree {k}: kernel {a}, recursion {b}")
        return a
    raise ValueError(f"unknown method {method!r}")
