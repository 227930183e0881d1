"""Pure-Python pivot kernels (reference implementation and fallback).

A tableau is a list of rows; each row is a list of exact scalars with the
right-hand side in the last position. The compiled module ``_kernels`` has
the same functions with the same semantics.
"""


def pivot(rows, r, c):
    """Gauss-Jordan pivot on entry ``(r, c)`` in place.

    Only rows with a nonzero in column ``c`` and only the nonzero columns of
    the pivot row are touched.
    """
    prow = rows[r]
    p = prow[c]
    nz = []
    for j, v in enumerate(prow):
        if v:
            v = v / p
            prow[j] = v
            nz.append((j, v))
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if not f:
            continue
        for j, v in nz:
            row[j] = row[j] - f * v


def min_ratio_rows(rows, c, signed):
    """Rows blocking an increase of column ``c``, restricted to the minimum ratio.

    A row blocks when it belongs to a sign-constrained basic variable
    (``signed[i]`` true) and its entry in column ``c`` is positive. Returns
    the indices of all blocking rows attaining ``min rhs / entry``.
    """
    best = None
    tied = []
    for i, row in enumerate(rows):
        if not signed[i]:
            continue
        t = row[c]
        if t > 0:
            ratio = row[-1] / t
            if best is None or ratio < best:
                best = ratio
                tied = [i]
            elif ratio == best:
                tied.append(i)
    return tied
