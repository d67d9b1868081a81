"""Polynomials in non-associative variables.

Monomials are plain (hashable) Python values:

* the unit ``ONE`` is the empty tuple ``()``;
* a variable ``x_j`` is the positive integer ``j``;
* for the magma and commutative flavors a product is the pair ``(left, right)``;
* for the associative flavor a monomial is a flat tuple of variable indices,
  e.g. ``(1, 2, 1)`` for ``x1 x2 x1``.

Every monomial stored in a :class:`Polynomial` is canonical for the
polynomial's flavor.  Canonical forms are produced by :func:`canonicalize`
and preserved by :func:`mono_mul`.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

Monomial = Union[int, tuple]
MultiDegree = Tuple[int, ...]

ONE: tuple = ()


class Flavor(enum.Enum):
    MAGMA = "magma"
    COMMUTATIVE = "commutative"
    ASSOCIATIVE = "associative"

    @classmethod
    def parse(cls, value: Union[str, "Flavor"]) -> "Flavor":
        if isinstance(value, Flavor):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"unknown flavor {value!r}; expected one of "
                             f"{', '.join(f.value for f in cls)}") from None


MAGMA = Flavor.MAGMA
COMMUTATIVE = Flavor.COMMUTATIVE
ASSOCIATIVE = Flavor.ASSOCIATIVE


class FlavorMismatch(ValueError):
    pass


# --------------------------------------------------------------------------
# monomials

@lru_cache(maxsize=None)
def degree(m: Monomial) -> int:
    if isinstance(m, int):
        return 1
    return sum(degree(c) for c in m)


def leaves(m: Monomial) -> Tuple[int, ...]:
    """Variable indices of ``m`` read left to right."""
    if isinstance(m, int):
        return (m,)
    out: tuple = ()
    for c in m:
        out += leaves(c)
    return out


def multidegree(m: Monomial, nvars: Optional[int] = None) -> MultiDegree:
    ls = leaves(m)
    top = max(ls, default=0)
    n = top if nvars is None else nvars
    if n < top:
        raise ValueError(f"monomial mentions x{top} but nvars={n}")
    d = [0] * n
    for j in ls:
        d[j - 1] += 1
    return tuple(d)


@lru_cache(maxsize=None)
def _tree_key(m: Monomial) -> tuple:
    if isinstance(m, int):
        return (1, m)
    if not m:
        return (0,)
    left, right = m
    k_left, k_right = _tree_key(left), _tree_key(right)
    return (k_left[0] + k_right[0], k_right, k_left)


def sort_key(m: Monomial, flavor: Flavor) -> tuple:
    """Key realising the ordering ``≺``: degree first, then the right factor,
    then the left factor.  Leaves of equal degree compare by variable index.

    Associative words are read as left-normed products, which makes the key
    the word length followed by the reversed word.
    """
    if flavor is ASSOCIATIVE:
        return (len(m), m[::-1])
    return _tree_key(m)


def compare(u: Monomial, v: Monomial, flavor: Flavor = MAGMA) -> int:
    """Return -1, 0 or 1 as ``u ≺ v``, ``u == v`` or ``v ≺ u``."""
    ku, kv = sort_key(u, flavor), sort_key(v, flavor)
    return (ku > kv) - (ku < kv)


def mono_mul(u: Monomial, v: Monomial, flavor: Flavor) -> Monomial:
    """Product of two canonical monomials, canonical again."""
    if u == ONE:
        return v
    if v == ONE:
        return u
    if flavor is ASSOCIATIVE:
        return u + v
    if flavor is COMMUTATIVE and _tree_key(v) < _tree_key(u):
        return (v, u)
    return (u, v)


def canonicalize(tree, flavor: Flavor = MAGMA) -> Monomial:
    """Canonical representative of a raw binary tree.

    ``tree`` is an int leaf, ``()`` for the unit, or a pair of raw trees.
    Associative inputs may also already be flat tuples of ints.
    """
    if isinstance(tree, int):
        if tree < 1:
            raise ValueError(f"variable index must be >= 1, got {tree}")
        return (tree,) if flavor is ASSOCIATIVE else tree
    tree = tuple(tree)
    if not tree:
        return ONE
    if flavor is ASSOCIATIVE:
        return leaves(tuple(canonicalize(c, MAGMA) for c in tree))
    if len(tree) != 2:
        raise ValueError(f"tree nodes must have two children, got {tree!r}")
    return mono_mul(canonicalize(tree[0], flavor), canonicalize(tree[1], flavor), flavor)


def is_canonical(m: Monomial, flavor: Flavor) -> bool:
    try:
        return canonicalize(m, flavor) == m
    except (ValueError, TypeError):
        return False


@lru_cache(maxsize=None)
def mono_derivative(m: Monomial, k: int, flavor: Flavor) -> Dict[Monomial, int]:
    """∂_k of a canonical monomial: each occurrence of ``x_k`` replaced by 1."""
    if flavor is ASSOCIATIVE:
        out: Dict[Monomial, int] = {}
        for i, j in enumerate(m):
            if j == k:
                w = m[:i] + m[i + 1:]
                out[w] = out.get(w, 0) + 1
        return out
    if isinstance(m, int):
        return {ONE: 1} if m == k else {}
    if not m:
        return {}
    left, right = m
    out = {}
    for w, c in mono_derivative(left, k, flavor).items():
        w = mono_mul(w, right, flavor)
        out[w] = out.get(w, 0) + c
    for w, c in mono_derivative(right, k, flavor).items():
        w = mono_mul(left, w, flavor)
        out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def substitute_variables(m: Monomial, perm: Dict[int, int], flavor: Flavor) -> Monomial:
    """Rename variables of ``m`` by ``perm`` (missing indices are fixed)."""
    if isinstance(m, int):
        return perm.get(m, m)
    if flavor is ASSOCIATIVE:
        return tuple(perm.get(j, j) for j in m)
    if not m:
        return ONE
    return mono_mul(substitute_variables(m[0], perm, flavor),
                    substitute_variables(m[1], perm, flavor), flavor)


@lru_cache(maxsize=None)
def _trees(d: MultiDegree, flavor: Flavor) -> Tuple[Monomial, ...]:
    n = sum(d)
    if n == 0:
        return (ONE,)
    if n == 1:
        j = d.index(1) + 1
        return ((j,),) if flavor is ASSOCIATIVE else (j,)
    if flavor is ASSOCIATIVE:
        out = set()
        for j, e in enumerate(d):
            if e:
                rest = d[:j] + (e - 1,) + d[j + 1:]
                out.update(w + (j + 1,) for w in _trees(rest, flavor))
        return tuple(out)
    out = []
    for d1 in iproduct(*(range(e + 1) for e in d)):
        s1 = sum(d1)
        if s1 == 0 or s1 == n:
            continue
        d2 = tuple(e - a for e, a in zip(d, d1))
        for a in _trees(d1, flavor):
            ka = _tree_key(a)
            for b in _trees(d2, flavor):
                if flavor is COMMUTATIVE and _tree_key(b) < ka:
                    continue
                out.append((a, b))
    return tuple(out)


def enumerate_monomials(d: Sequence[int], flavor: Flavor = MAGMA) -> List[Monomial]:
    """All canonical monomials of multidegree ``d``, sorted by ``≺``."""
    d = tuple(int(e) for e in d)
    if any(e < 0 for e in d):
        raise ValueError(f"negative exponent in multidegree {d}")
    return sorted(_trees(d, flavor), key=lambda m: sort_key(m, flavor))


def multidegrees(nvars: int, total: int) -> Iterator[MultiDegree]:
    """All multidegrees in ``nvars`` variables with the given total degree."""
    if nvars == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in multidegrees(nvars - 1, total - first):
            yield (first,) + rest


# --------------------------------------------------------------------------
# polynomials

def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Polynomial:
    """Finite linear combination of canonical monomials with rational coefficients.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("flavor", "_terms")

    def __init__(self, terms: Union[Dict[Monomial, object], Iterable[Tuple[Monomial, object]], None] = None,
                 flavor: Flavor = MAGMA, *, canonical: bool = False):
        self.flavor = Flavor.parse(flavor)
        acc: Dict[Monomial, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                if not canonical:
                    m = canonicalize(m, self.flavor)
                c = _as_fraction(c)
                acc[m] = acc.get(m, 0) + c
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], flavor: Flavor) -> "Polynomial":
        p = object.__new__(cls)
        p.flavor = flavor
        p._terms = terms
        return p

    # construction helpers
    @classmethod
    def zero(cls, flavor: Flavor = MAGMA) -> "Polynomial":
        return cls._raw({}, Flavor.parse(flavor))

    @classmethod
    def one(cls, flavor: Flavor = MAGMA) -> "Polynomial":
        return cls._raw({ONE: Fraction(1)}, Flavor.parse(flavor))

    @classmethod
    def constant(cls, c, flavor: Flavor = MAGMA) -> "Polynomial":
        return cls({ONE: c}, flavor, canonical=True)

    @classmethod
    def var(cls, j: int = 1, flavor: Flavor = MAGMA) -> "Polynomial":
        flavor = Flavor.parse(flavor)
        return cls._raw({canonicalize(j, flavor): Fraction(1)}, flavor)

    @classmethod
    def monomial(cls, m, coeff=1, flavor: Flavor = MAGMA) -> "Polynomial":
        return cls({m: coeff}, flavor)

    # container protocol
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(canonicalize(m, self.flavor), Fraction(0))

    def sorted_terms(self, reverse: bool = False) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: sort_key(t[0], self.flavor), reverse=reverse)

    # comparisons
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.flavor is other.flavor and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.flavor, frozenset(self._terms.items())))

    # arithmetic
    def _check(self, other: "Polynomial") -> None:
        if self.flavor is not other.flavor:
            raise FlavorMismatch(f"cannot combine {self.flavor.value} and {other.flavor.value} polynomials")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.flavor)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Polynomial._raw(acc, self.flavor)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.flavor)

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.flavor)
        return Polynomial._raw({m: c * a for m, a in self._terms.items()}, self.flavor)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        flavor = self.flavor
        acc: Dict[Monomial, Fraction] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = mono_mul(u, v, flavor)
                acc[w] = acc.get(w, 0) + a * b
        return Polynomial._raw({m: c for m, c in acc.items() if c}, flavor)

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    # structure
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((degree(m) for m in self._terms), default=-1)

    def nvars(self) -> int:
        return max((max(leaves(m), default=0) for m in self._terms), default=0)

    def variables(self) -> List[int]:
        return sorted({j for m in self._terms for j in leaves(m)})

    def homogeneous_component(self, n: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self._terms.items() if degree(m) == n}, self.flavor)

    def truncate(self, n: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self._terms.items() if degree(m) <= n}, self.flavor)

    def is_homogeneous(self) -> bool:
        return len({degree(m) for m in self._terms}) <= 1

    def derivative(self, k: int = 1, times: int = 1) -> "Polynomial":
        p = self
        for _ in range(times):
            p = partial_derivative(p, k)
        return p

    def is_constant(self) -> bool:
        """True when annihilated by every ∂_k (an element of the constants)."""
        return all(not partial_derivative(self, k) for k in self.variables())

    def rename(self, perm: Dict[int, int]) -> "Polynomial":
        acc: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            w = substitute_variables(m, perm, self.flavor)
            acc[w] = acc.get(w, 0) + c
        return Polynomial._raw({m: c for m, c in acc.items() if c}, self.flavor)

    def __repr__(self) -> str:
        from .expr import format_polynomial
        return f"Polynomial({format_polynomial(self)!r}, {self.flavor.value})"

    def __str__(self) -> str:
        from .expr import format_polynomial
        return format_polynomial(self)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def partial_derivative(p: Polynomial, k: int) -> Polynomial:
    flavor = p.flavor
    acc: Dict[Monomial, Fraction] = {}
    for m, c in p.items():
        for w, e in mono_derivative(m, k, flavor).items():
            acc[w] = acc.get(w, 0) + c * e
    return Polynomial._raw({m: c for m, c in acc.items() if c}, flavor)


def leading_term(f: Polynomial) -> Tuple[Monomial, Fraction]:
    if not f:
        raise ValueError("the zero polynomial has no leading term")
    m = max(f, key=lambda u: sort_key(u, f.flavor))
    return m, f._terms[m]


# --------------------------------------------------------------------------
# multiplication operators

class MultiplicationOperator:
    """A word in left/right multiplications, applied left to right.

    ``MultiplicationOperator([("R", x), ("L", y)])`` sends ``v`` to ``y (v x)``.
    Rational linear combinations of words are formed with ``+`` and scalar
    ``*``; composition with ``@`` (``a @ b`` applies ``a`` first).
    """

    __slots__ = ("words",)

    def __init__(self, word: Sequence[Tuple[str, Polynomial]] = (), coeff=1, *, _words=None):
        if _words is not None:
            self.words = _words
            return
        atoms = []
        for side, u in word:
            side = side.upper()
            if side not in ("L", "R"):
                raise ValueError(f"atom side must be 'L' or 'R', got {side!r}")
            atoms.append((side, u))
        c = _as_fraction(coeff)
        self.words = [(c, tuple(atoms))] if c else []

    @classmethod
    def left(cls, u: Polynomial) -> "MultiplicationOperator":
        return cls([("L", u)])

    @classmethod
    def right(cls, u: Polynomial) -> "MultiplicationOperator":
        return cls([("R", u)])

    @classmethod
    def identity(cls) -> "MultiplicationOperator":
        return cls(())

    def __add__(self, other: "MultiplicationOperator") -> "MultiplicationOperator":
        return MultiplicationOperator(_words=self.words + other.words)

    def __mul__(self, c) -> "MultiplicationOperator":
        c = _as_fraction(c)
        return MultiplicationOperator(_words=[(c * a, w) for a, w in self.words if c])

    __rmul__ = __mul__

    def __matmul__(self, other: "MultiplicationOperator") -> "MultiplicationOperator":
        return MultiplicationOperator(_words=[(a * b, w + v) for a, w in self.words for b, v in other.words])

    def __pow__(self, k: int) -> "MultiplicationOperator":
        out = MultiplicationOperator.identity()
        for _ in range(k):
            out = out @ self
        return out

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_operator(self, p)


def apply_operator(op: MultiplicationOperator, p: Polynomial) -> Polynomial:
    total = Polynomial.zero(p.flavor)
    for c, word in op.words:
        q = p
        for side, u in word:
            if not isinstance(u, Polynomial):
                raise TypeError("operator atoms must carry polynomials")
            q = u * q if side == "L" else q * u
        total = total + q.scale(c)
    return total


def right_power(p: Polynomial, j: int, times: int) -> Polynomial:
    """``p ρ_j^times``: right-multiply ``times`` by ``x_j``."""
    x = Polynomial.var(j, p.flavor)
    for _ in range(times):
        p = p * x
    return p
