# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled DTW kernel; mirrors _dtw_py.last_row exactly.

Same shared-start recurrence and finite boundary sentinel as the pure
kernel, so both produce bit-identical rows for the same input.
"""

from cpython.array cimport array
from array import array as _py_array


def last_row(a, b):
    """Return row m of the shared-start DTW table as a Python list."""
    cdef array aa = _py_array("d", a)
    cdef array bb = _py_array("d", b)
    cdef double[:] av = aa
    cdef double[:] bv = bb
    cdef Py_ssize_t m = av.shape[0]
    cdef Py_ssize_t n = bv.shape[0]
    cdef double sentinel = 2.0 * (m + n) + 4.0

    cdef array prev_a = _py_array("d", [0.0] * (n + 1))
    cdef array cur_a = _py_array("d", [0.0] * (n + 1))
    cdef double[:] prev = prev_a
    cdef double[:] cur = cur_a
    cdef Py_ssize_t i, j
    cdef double d, best, ai

    prev[0] = 0.0
    for j in range(1, n + 1):
        prev[j] = sentinel

    for i in range(m):
        ai = av[i]
        cur[0] = sentinel
        for j in range(1, n + 1):
            d = ai - bv[j - 1]
            if d < 0.0:
                d = -d
            best = prev[j]
            if prev[j - 1] < best:
                best = prev[j - 1]
            if cur[j - 1] < best:
                best = cur[j - 1]
            cur[j] = d + best
        prev, cur = cur, prev

    return [prev[j] for j in range(n + 1)]
