# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled in-place sweeps over the subset lattice.

Each function performs the standard per-bit dynamic program on a dense
C-contiguous float64 array of length 2**j indexed by bitmask.  These are the
hot kernels of the whole package; the numpy fallback in ``lattice_np`` is the
drop-in replacement selected when this module is not built.
"""

NAME = "cython"


def zeta_superset_(double[::1] a, int j):
    """a[S] <- sum of a[T] over T containing S."""
    cdef Py_ssize_t n = (<Py_ssize_t> 1) << j
    cdef Py_ssize_t bit, s
    cdef int b
    for b in range(j):
        bit = (<Py_ssize_t> 1) << b
        for s in range(n):
            if (s & bit) == 0:
                a[s] += a[s | bit]


def moebius_superset_(double[::1] a, int j):
    """Inverse of zeta_superset_: alternating-sign sum over supersets."""
    cdef Py_ssize_t n = (<Py_ssize_t> 1) << j
    cdef Py_ssize_t bit, s
    cdef int b
    for b in range(j):
        bit = (<Py_ssize_t> 1) << b
        for s in range(n):
            if (s & bit) == 0:
                a[s] -= a[s | bit]


def zeta_subset_(double[::1] a, int j):
    """a[S] <- sum of a[T] over T contained in S."""
    cdef Py_ssize_t n = (<Py_ssize_t> 1) << j
    cdef Py_ssize_t bit, s
    cdef int b
    for b in range(j):
        bit = (<Py_ssize_t> 1) << b
        for s in range(n):
            if s & bit:
                a[s] += a[s ^ bit]


def moebius_subset_(double[::1] a, int j):
    """Inverse of zeta_subset_: alternating-sign sum over subsets."""
    cdef Py_ssize_t n = (<Py_ssize_t> 1) << j
    cdef Py_ssize_t bit, s
    cdef int b
    for b in range(j):
        bit = (<Py_ssize_t> 1) << b
        for s in range(n):
            if s & bit:
                a[s] -= a[s ^ bit]
