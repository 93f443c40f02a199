"""Bitmask encoding of axiom subsets and fast transforms over the Boolean lattice.

Subsets of an ordered axiom set are encoded as bitmasks: bit ``i`` of a mask
corresponds to ``labels[i]``.  Per-subset quantities live in dense float64
arrays of length ``2**J`` indexed by mask, entry 0 being the empty set, so one
carrier type serves satisfaction collections, contribution weights, capacities
and games alike.  The four transforms below convert between a set function and
its additive coefficients for the superset or subset order; each runs in
O(J * 2**J) via in-place per-bit sweeps (compiled kernels when built, numpy
otherwise — see :mod:`axiometer._kernels`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DuplicateAxiomError, RangeError, UnknownAxiomError

#: Hard cap on the number of axioms: arrays have 2**J entries.
MAX_AXIOMS = 20

#: Name of the kernel backend selected at import ("cython" or "numpy").
BACKEND = _kernels.BACKEND


@dataclass(frozen=True)
class AxiomSet:
    """Ordered, distinct axiom names; label order defines bit positions."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        if not (1 <= len(labels) <= MAX_AXIOMS):
            raise RangeError(
                f"axiom count must be between 1 and {MAX_AXIOMS}, got {len(labels)}"
            )
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise RangeError(f"axiom labels must be non-empty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise DuplicateAxiomError(f"axiom labels must be distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        """Number of axioms J."""
        return len(self.labels)

    @property
    def n_masks(self) -> int:
        return 1 << self.size

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def index(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise UnknownAxiomError(f"unknown axiom {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        """Bitmask with bit i set iff labels[i] is in ``names``.

        Raises UnknownAxiomError for names outside the set and
        DuplicateAxiomError if a name repeats.
        """
        mask = 0
        for name in names:
            bit = 1 << self.index(name)
            if mask & bit:
                raise DuplicateAxiomError(f"axiom {name!r} listed twice")
            mask |= bit
        return mask

    def members(self, mask: int) -> tuple[str, ...]:
        """Labels of the axioms in ``mask``, in bit order."""
        self._check_mask(mask)
        return tuple(lab for i, lab in enumerate(self.labels) if mask >> i & 1)

    def subset_key(self, mask: int, sep: str = "+") -> str:
        """Join the member labels, e.g. mask 0b101 -> ``"a1+a3"``."""
        return sep.join(self.members(mask))

    def nonempty_masks(self) -> range:
        return range(1, self.n_masks)

    def _check_mask(self, mask: int) -> None:
        if not 0 <= mask < self.n_masks:
            raise RangeError(f"mask {mask} out of range for {self.size} axioms")


def mask_of(axioms: AxiomSet, names: Iterable[str]) -> int:
    """Module-level alias for :meth:`AxiomSet.mask_of`."""
    return axioms.mask_of(names)


def subset_vector(axioms: AxiomSet, values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Validate and copy a per-subset array (length 2**J, float64)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != axioms.n_masks:
        raise RangeError(
            f"subset vector must have length {axioms.n_masks}, got shape {arr.shape}"
        )
    return arr.copy()


def _prepare(values: np.ndarray | Sequence[float]) -> tuple[np.ndarray, int]:
    arr = np.array(values, dtype=np.float64, order="C", copy=True)
    n = arr.shape[0] if arr.ndim == 1 else 0
    j = n.bit_length() - 1
    if n <= 0 or (1 << j) != n or j > MAX_AXIOMS:
        raise RangeError(f"subset vector length must be a power of two <= 2**{MAX_AXIOMS}")
    return arr, j


def zeta_superset(values) -> np.ndarray:
    """Return x with x[S] = sum over T >= S (superset order) of values[T]."""
    arr, j = _prepare(values)
    _kernels.zeta_superset_(arr, j)
    return arr


def moebius_superset(values) -> np.ndarray:
    """Return y with y[S] = sum over T >= S of (-1)**|T\\S| * values[T].

    Exact inverse of :func:`zeta_superset`.
    """
    arr, j = _prepare(values)
    _kernels.moebius_superset_(arr, j)
    return arr


def zeta_subset(values) -> np.ndarray:
    """Return x with x[S] = sum over T <= S (subset order) of values[T]."""
    arr, j = _prepare(values)
    _kernels.zeta_subset_(arr, j)
    return arr


def moebius_subset(values) -> np.ndarray:
    """Return y with y[S] = sum over T <= S of (-1)**|S\\T| * values[T].

    Exact inverse of :func:`zeta_subset`.
    """
    arr, j = _prepare(values)
    _kernels.moebius_subset_(arr, j)
    return arr


@lru_cache(maxsize=None)
def popcounts(j: int) -> np.ndarray:
    """Cardinality |S| for every mask S < 2**j (read-only int64 array)."""
    counts = np.zeros(1 << j, dtype=np.int64)
    for b in range(j):
        counts += (np.arange(1 << j) >> b) & 1
    counts.setflags(write=False)
    return counts
