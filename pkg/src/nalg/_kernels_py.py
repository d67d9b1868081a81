"""Pure-Python modular row reduction (fallback for the compiled ``_kernels``)."""


def rref_mod(rows, ncols, p):
    """Reduced row echelon form of a sparse integer matrix modulo the prime ``p``.

    ``rows`` is a sequence of ``{column: int}`` dicts.  Returns
    ``(pivots, reduced)`` where ``pivots`` is the ascending list of pivot
    columns and ``reduced[i]`` is the row with pivot ``pivots[i]``, normalized
    to 1 at its pivot, as a ``{column: residue}`` dict.
    """
    piv = {}
    for row in sorted(rows, key=len):
        r = {}
        for c, v in row.items():
            if not 0 <= c < ncols:
                raise IndexError(f"column {c} out of range")
            v %= p
            if v:
                r[c] = v
        while r:
            c = min(r)
            pr = piv.get(c)
            if pr is None:
                inv = pow(r[c], p - 2, p)
                piv[c] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[c]
            for k, v in pr.items():
                s = (r.get(k, 0) - f * v) % p
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
                if kk == k:
                    continue
                s = (pr.get(kk, 0) - f * v) % p
                if s:
                    pr[kk] = s
                else:
                    pr.pop(kk, None)
    return order, [piv[c] for c in order]
