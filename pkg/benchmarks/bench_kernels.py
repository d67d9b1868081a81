"""Compare the compiled and pure-Python modular RREF kernels.

Kernel timings use the derivation matrices that the constants computation
actually reduces.  The end-to-end column reruns ``constants_basis`` in a
fresh interpreter per backend, so caches and import-time selection are real.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import os
import subprocess
import sys
import time

from nalg import _kernels_py
from nalg.constants import derivation_matrix
from nalg.linalg import PRIMES, _integer_rows
from nalg.magma import COMMUTATIVE, MAGMA

try:
    from nalg import _kernels
except ImportError:
    _kernels = None

CASES = [
    ("magma (8,)", (8,), MAGMA),
    ("magma (10,)", (10,), MAGMA),
    ("magma (1,1,1,1,1)", (1, 1, 1, 1, 1), MAGMA),
    ("magma (2,2,2)", (2, 2, 2), MAGMA),
    ("commutative (1,)*6", (1,) * 6, COMMUTATIVE),
]

END_TO_END = """
import sys, time
from nalg import linalg
from nalg.constants import constants_basis
from nalg.magma import Flavor
d, fl = eval(sys.argv[1]), Flavor.parse(sys.argv[2])
t = time.perf_counter()
constants_basis(d, fl)
print(linalg.BACKEND, time.perf_counter() - t)
"""


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def end_to_end(d, flavor, pure):
    env = dict(os.environ)
    if pure:
        env["NALG_PURE_PYTHON"] = "1"
    else:
        env.pop("NALG_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", END_TO_END, repr(d), flavor.value],
                         env=env, capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernel not built; only the Python kernel is available")

    p = PRIMES[0]
    print(f"{'case':<22}{'shape':>14}{'cython':>10}{'python':>10}{'speedup':>9}   end-to-end cy / py")
    for name, d, flavor in CASES:
        cols, rows = derivation_matrix(d, flavor)
        irows = _integer_rows(rows)
        shape = f"{len(irows)}x{len(cols)}"
        t_py = best_of(lambda: _kernels_py.rref_mod(irows, len(cols), p), args.repeat)
        if _kernels is not None:
            t_cy = best_of(lambda: _kernels.rref_mod(irows, len(cols), p), args.repeat)
            if _kernels.rref_mod(irows, len(cols), p) != _kernels_py.rref_mod(irows, len(cols), p):
                raise SystemExit(f"kernels disagree on {name}")
            cy = f"{t_cy:10.4f}"
            speed = f"{t_py / t_cy:8.1f}x"
        else:
            cy, speed = f"{'-':>10}", f"{'-':>9}"
        e_cy = end_to_end(d, flavor, pure=False)
        e_py = end_to_end(d, flavor, pure=True)
        print(f"{name:<22}{shape:>14}{cy}{t_py:10.4f}{speed}   {e_cy[1]:.3f}s ({e_cy[0]}) / {e_py[1]:.3f}s", flush=True)


if __name__ == "__main__":
    main()
