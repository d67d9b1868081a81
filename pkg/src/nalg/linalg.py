"""Exact linear algebra over the rationals for sparse matrices.

Matrices are sequences of sparse rows ``{column: rational}``.  Reduced row
echelon forms are computed modulo word-sized primes by a compiled kernel
(``nalg._kernels``; a pure-Python twin is used when the extension is not
built), lifted to the rationals by CRT and rational reconstruction, and then
certified exactly: every input row must be the combination of the candidate
rows read off at the pivot columns.  Because the rank modulo ``p`` never
exceeds the rank over ``Q``, a certified candidate *is* the rational RREF.
If lifting keeps failing, plain fraction arithmetic takes over.

Set ``NALG_PURE_PYTHON=1`` to force the pure-Python kernel.
"""
from __future__ import annotations

import logging
import os
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from . import _kernels_py

log = logging.getLogger(__name__)

Row = Dict[int, Fraction]

if os.environ.get("NALG_PURE_PYTHON"):
    _rref_mod = _kernels_py.rref_mod
    BACKEND = "python"
else:
    try:
        from ._kernels import rref_mod as _rref_mod
        BACKEND = "cython"
    except ImportError:
        _rref_mod = _kernels_py.rref_mod
        BACKEND = "python"

MAX_PRIMES = 12


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 7, 61):  # deterministic below 2**32
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(bound: int, count: int) -> List[int]:
    out, n = [], bound - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 1
    return out


PRIMES = tuple(_primes_below(2 ** 31, MAX_PRIMES))


def rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """The fraction n/d ≡ a (mod m) with |n|, d ≤ sqrt(m/2), if one exists."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1, s0, s1 = m, a, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _integer_rows(rows: Sequence[Dict[int, object]]) -> List[Dict[int, int]]:
    out = []
    for row in rows:
        fr = {c: Fraction(v) for c, v in row.items() if v}
        if not fr:
            continue
        den = 1
        for v in fr.values():
            den = den * v.denominator // gcd(den, v.denominator)
        out.append({c: int(v * den) for c, v in fr.items()})
    return out


def _certify(rows: List[Dict[int, int]], pivots: List[int], reduced: List[Row]) -> bool:
    where = {c: i for i, c in enumerate(pivots)}
    for row in rows:
        acc: Dict[int, Fraction] = dict(row)
        for c, v in row.items():
            i = where.get(c)
            if i is None:
                continue
            for k, w in reduced[i].items():
                s = acc.get(k, 0) - v * w
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
        if acc:
            return False
    return True


def _rref_fraction(rows: List[Dict[int, int]]) -> Tuple[List[int], List[Row]]:
    piv: Dict[int, Row] = {}
    for row in sorted(rows, key=len):
        r = {c: Fraction(v) for c, v in row.items()}
        while r:
            c = min(r)
            pr = piv.get(c)
            if pr is None:
                inv = 1 / r[c]
                piv[c] = {k: v * inv for k, v in r.items()}
                break
            f = r[c]
            for k, v in pr.items():
                s = r.get(k, 0) - f * v
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
    order = sorted(piv)
    for c in reversed(order):
        pr = piv[c]
        for k in [k for k in pr if k != c and k in piv]:
            f = pr.pop(k)
            for kk, v in piv[k].items():
                if kk != k:
                    s = pr.get(kk, 0) - f * v
                    if s:
                        pr[kk] = s
                    else:
                        pr.pop(kk, None)
    return order, [piv[c] for c in order]


def rref(rows: Sequence[Dict[int, object]], ncols: int) -> Tuple[List[int], List[Row]]:
    """Exact reduced row echelon form.

    Returns ``(pivots, reduced)``: ascending pivot columns and the nonzero
    rows of the RREF (each 1 at its pivot), as ``{column: Fraction}`` dicts.
    """
    irows = _integer_rows(rows)
    if not irows:
        return [], []
    best_pivots: Optional[List[int]] = None
    residues: List[List[Dict[int, int]]] = []
    used: List[int] = []
    for p in PRIMES:
        pivots, red = _rref_mod(irows, ncols, p)
        if best_pivots is None or len(pivots) > len(best_pivots):
            best_pivots, residues, used = pivots, [], []
        elif pivots != best_pivots:
            continue
        residues.append(red)
        used.append(p)
        candidate = _lift(best_pivots, residues, used)
        if candidate is not None and _certify(irows, best_pivots, candidate):
            return list(best_pivots), candidate
    log.debug("modular lifting failed after %d primes; using fraction arithmetic", len(used))
    return _rref_fraction(irows)


def _lift(pivots, residues, primes) -> Optional[List[Row]]:
    modulus = 1
    for p in primes:
        modulus *= p
    out = []
    for i in range(len(pivots)):
        cols = set()
        for red in residues:
            cols.update(red[i])
        row = {}
        for c in sorted(cols):
            # CRT over all primes
            x, m = 0, 1
            for red, p in zip(residues, primes):
                a = red[i].get(c, 0)
                t = (a - x) * pow(m, -1, p) % p
                x += m * t
                m *= p
            q = rational_reconstruct(x, modulus)
            if q is None:
                return None
            if q:
                row[c] = q
        out.append(row)
    return out


def rank(rows: Sequence[Dict[int, object]], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows: Sequence[Dict[int, object]], ncols: int) -> List[Row]:
    """Basis of ``{v : A v = 0}`` in echelon form.

    One vector per non-pivot column ``f`` (ascending): it has 1 at ``f``, 0 at
    every other non-pivot column, and its largest column is ``f``.
    """
    pivots, red = rref(rows, ncols)
    pivot_set = set(pivots)
    basis: Dict[int, Row] = {f: {f: Fraction(1)} for f in range(ncols) if f not in pivot_set}
    for p, r in zip(pivots, red):
        for f, v in r.items():
            if f != p:
                basis[f][p] = -v
    return [basis[f] for f in sorted(basis)]


def solve(rows: Sequence[Dict[int, object]], ncols: int, rhs: Sequence[object]) -> Optional[List[Fraction]]:
    """One exact solution of ``A z = rhs`` (free unknowns set to 0), or None."""
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        aug.append(r)
    pivots, red = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    z = [Fraction(0)] * ncols
    for p, r in zip(pivots, red):
        z[p] = r.get(ncols, Fraction(0))
    return z


def express(basis: Sequence[Dict[int, object]], v: Dict[int, object]) -> Optional[List[Fraction]]:
    """Coordinates of ``v`` in the (independent) vectors ``basis``, or None."""
    columns: Dict[int, Dict[int, object]] = {}
    for i, b in enumerate(basis):
        for c, x in b.items():
            if x:
                columns.setdefault(c, {})[i] = x
    keys = sorted(set(columns) | {c for c, x in v.items() if x})
    return solve([columns.get(c, {}) for c in keys], len(basis), [v.get(c, 0) for c in keys])
