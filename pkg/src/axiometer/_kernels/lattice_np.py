"""Numpy fallback for the lattice sweeps.

Same contracts as the compiled module: in-place per-bit sweeps on a
C-contiguous float64 array of length 2**j.  The reshape views expose bit b as
the middle axis, so ``v[:, 0, :]`` are the masks without b and ``v[:, 1, :]``
the masks with b.
"""

NAME = "numpy"


def zeta_superset_(a, j):
    for b in range(j):
        v = a.reshape(-1, 2, 1 << b)
        v[:, 0, :] += v[:, 1, :]


def moebius_superset_(a, j):
    for b in range(j):
        v = a.reshape(-1, 2, 1 << b)
        v[:, 0, :] -= v[:, 1, :]


def zeta_subset_(a, j):
    for b in range(j):
        v = a.reshape(-1, 2, 1 << b)
        v[:, 1, :] += v[:, 0, :]


def moebius_subset_(a, j):
    for b in range(j):
        v = a.reshape(-1, 2, 1 << b)
        v[:, 1, :] -= v[:, 0, :]
