# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular row reduction.  Same contract as ``_kernels_py.rref_mod``."""

from libc.stdlib cimport calloc, free
from libc.stdint cimport uint64_t


cdef uint64_t _inv(uint64_t a, uint64_t p) nogil:
    cdef uint64_t result = 1, base = a % p, e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod(rows, Py_ssize_t ncols, uint64_t p):
    if p >= (<uint64_t>1) << 32:
        raise ValueError("modulus must be below 2**32")
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    cdef uint64_t *a = <uint64_t *> calloc(nrows * ncols, sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, r = 0, piv_row
    cdef uint64_t f, inv, pr, v
    cdef uint64_t *row_r
    cdef uint64_t *row_i
    pivots = []
    try:
        for i, row in enumerate(rows):
            for j, val in row.items():
                if j < 0 or j >= ncols:
                    raise IndexError(f"column {j} out of range")
                a[i * ncols + j] = <uint64_t>(val % p)
        with nogil:
            for c in range(ncols):
                if r == nrows:
                    break
                piv_row = -1
                for i in range(r, nrows):
                    if a[i * ncols + c] != 0:
                        piv_row = i
                        break
                if piv_row < 0:
                    continue
                if piv_row != r:
                    row_r = a + r * ncols
                    row_i = a + piv_row * ncols
                    for j in range(c, ncols):
                        v = row_r[j]
                        row_r[j] = row_i[j]
                        row_i[j] = v
                row_r = a + r * ncols
                inv = _inv(row_r[c], p)
                for j in range(c, ncols):
                    if row_r[j]:
                        row_r[j] = row_r[j] * inv % p
                for i in range(nrows):
                    if i == r:
                        continue
                    row_i = a + i * ncols
                    f = row_i[c]
                    if f == 0:
                        continue
                    f = p - f
                    for j in range(c, ncols):
                        pr = row_r[j]
                        if pr:
                            row_i[j] = (row_i[j] + f * pr) % p
                with gil:
                    pivots.append(c)
                r += 1
        reduced = []
        for i in range(r):
            row_r = a + i * ncols
            out = {}
            for j in range(pivots[i], ncols):
                if row_r[j]:
                    out[j] = row_r[j]
            reduced.append(out)
        return pivots, reduced
    finally:
        free(a)
