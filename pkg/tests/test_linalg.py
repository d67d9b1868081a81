import random
import subprocess
import sys
from fractions import Fraction

import pytest

from nalg import _kernels_py, linalg
from nalg.constants import derivation_matrix
from nalg.magma import COMMUTATIVE, MAGMA

try:
    from nalg import _kernels
except ImportError:
    _kernels = None


def fraction_rref(rows, ncols):
    """Textbook Gauss-Jordan over Fractions, dense; the oracle."""
    m = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return pivots, [{c: v for c, v in enumerate(row) if v} for row in m[:r]]


def random_matrix(rng, nrows, ncols, density=0.4, size=20):
    rows = []
    for _ in range(nrows):
        rows.append({c: Fraction(rng.randint(-size, size), rng.randint(1, 5))
                     for c in range(ncols) if rng.random() < density})
    return rows


@pytest.mark.parametrize("seed", range(25))
def test_rref_matches_oracle(seed):
    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 9), rng.randint(1, 9)
    rows = random_matrix(rng, nrows, ncols)
    if seed % 3 == 0 and nrows > 1:
        rows[-1] = {c: 2 * rows[0].get(c, 0) - Fraction(1, 3) * rows[1 % nrows].get(c, 0) for c in range(ncols)}
    assert linalg.rref(rows, ncols) == fraction_rref(rows, ncols)


def test_large_entries_need_several_primes():
    big = 10 ** 40 + 7
    rows = [{0: big, 1: 1}, {0: 3, 1: big}]
    assert linalg.rref(rows, 3) == fraction_rref(rows, 3)
    rows = [{0: Fraction(1, big), 1: Fraction(big, 3)}]
    assert linalg.rref(rows, 2) == fraction_rref(rows, 2)


def test_fallback_to_fractions(monkeypatch):
    monkeypatch.setattr(linalg, "PRIMES", linalg.PRIMES[:1])
    huge = 10 ** 200 + 1
    rows = [{0: 1, 1: Fraction(huge, huge - 2)}, {0: 1, 1: 1, 2: 1}]
    assert linalg.rref(rows, 3) == fraction_rref(rows, 3)


def test_nullspace_and_solve():
    rows = [{0: 1, 1: 2, 2: 3}, {0: 2, 1: 4, 2: 6}, {1: 1, 2: 1}]
    ns = linalg.nullspace(rows, 3)
    assert ns == [{2: 1, 0: -1, 1: -1}]
    for v in ns:
        assert all(sum(r.get(c, 0) * x for c, x in v.items()) == 0 for r in rows)
    assert linalg.rank(rows, 3) == 2
    z = linalg.solve(rows, 3, [6, 12, 2])
    assert z is not None and all(sum(r.get(c, 0) * z[c] for c in range(3)) == b for r, b in zip(rows, [6, 12, 2]))
    assert linalg.solve(rows, 3, [1, 0, 0]) is None
    assert linalg.express([{0: 1, 1: 1}, {1: 1}], {0: 2, 1: 5}) == [2, 3]
    assert linalg.express([{0: 1}], {1: 1}) is None


def test_empty_inputs():
    assert linalg.rref([], 4) == ([], [])
    assert linalg.rref([{}, {}], 2) == ([], [])
    assert linalg.nullspace([], 2) == [{0: 1}, {1: 1}]


def test_rational_reconstruct():
    m = linalg.PRIMES[0] * linalg.PRIMES[1]
    for q in [Fraction(3, 7), Fraction(-22, 5), Fraction(0), Fraction(123456, 789)]:
        a = q.numerator * pow(q.denominator, -1, m) % m
        assert linalg.rational_reconstruct(a, m) == q


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
@pytest.mark.parametrize("d,flavor", [((6,), MAGMA), ((2, 2), MAGMA), ((1, 1, 1, 1), MAGMA), ((1,) * 5, COMMUTATIVE)])
def test_backends_agree(d, flavor):
    cols, rows = derivation_matrix(d, flavor)
    irows = linalg._integer_rows(rows)
    for p in linalg.PRIMES[:3]:
        assert _kernels.rref_mod(irows, len(cols), p) == _kernels_py.rref_mod(irows, len(cols), p)


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
@pytest.mark.parametrize("seed", range(10))
def test_backends_agree_random(seed):
    rng = random.Random(100 + seed)
    p = linalg.PRIMES[seed % len(linalg.PRIMES)]
    rows = [{c: rng.randint(0, p - 1) for c in range(12) if rng.random() < 0.5} for _ in range(rng.randint(1, 10))]
    assert _kernels.rref_mod(rows, 12, p) == _kernels_py.rref_mod(rows, 12, p)


def test_backend_is_reported():
    assert linalg.BACKEND in ("cython", "python")


def test_pure_python_switch():
    out = subprocess.run([sys.executable, "-c", "from nalg import linalg; print(linalg.BACKEND)"],
                         env={"NALG_PURE_PYTHON": "1", "PATH": ""}, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
