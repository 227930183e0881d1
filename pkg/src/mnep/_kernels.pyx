# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled pivot kernels; same contract as ``mnep._kernels_py``."""
from libc.stdlib cimport malloc, free


def pivot(list rows, Py_ssize_t r, Py_ssize_t c):
    cdef list prow = <list>rows[r]
    cdef object p = prow[c]
    cdef Py_ssize_t n = len(prow)
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t i, j, k, nnz = 0
    cdef object v, f
    cdef list row
    cdef Py_ssize_t *cols = <Py_ssize_t *>malloc(n * sizeof(Py_ssize_t))
    cdef list vals = []
    if cols == NULL:
        raise MemoryError()
    try:
        for j in range(n):
            v = prow[j]
            if v:
                v = v / p
                prow[j] = v
                cols[nnz] = j
                nnz += 1
                vals.append(v)
        for i in range(m):
            if i == r:
                continue
            row = <list>rows[i]
            f = row[c]
            if not f:
                continue
            for k in range(nnz):
                j = cols[k]
                row[j] = row[j] - f * vals[k]
    finally:
        free(cols)


def min_ratio_rows(list rows, Py_ssize_t c, is_signed):
    cdef Py_ssize_t i, m = len(rows)
    cdef list row
    cdef list tied = []
    cdef object best = None
    cdef object t, ratio
    cdef Py_ssize_t last
    for i in range(m):
        if not is_signed[i]:
            continue
        row = <list>rows[i]
        t = row[c]
        if t > 0:
            last = len(row) - 1
            ratio = row[last] / t
            if best is None or ratio < best:
                best = ratio
                tied = [i]
            elif ratio == best:
                tied.append(i)
    return tied
