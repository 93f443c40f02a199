"""Intrinsic valuations of axiom combinations as capacities.

A capacity assigns a non-negative value to every non-empty subset of axioms
(0 to the empty set) and is meant to be monotone under inclusion.  Synergy
between axioms shows up as super-additivity (the whole worth more than any
split), substitutability as sub-additivity.  Monotonicity and the additivity
flags are reported by :func:`validate_capacity` rather than enforced at
construction, so that questionable inputs can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MonotonicityError, RangeError
from .lattice import AxiomSet, moebius_subset, popcounts, subset_vector

#: Above this J the 3**J bipartition sweep for the additivity flags is skipped.
ADDITIVITY_CHECK_MAX_AXIOMS = 14


@dataclass(frozen=True, eq=False)
class Capacity:
    """Non-negative per-subset valuation with u[empty] fixed to 0."""

    axioms: AxiomSet
    u: np.ndarray

    def __post_init__(self):
        arr = subset_vector(self.axioms, self.u)
        if arr[0] != 0.0:
            raise RangeError("capacity of the empty subset must be exactly 0")
        if np.any(arr < 0.0):
            bad = int(np.argmax(arr < 0.0))
            raise RangeError(
                f"capacity must be non-negative, got {arr[bad]} at subset "
                f"{{{self.axioms.subset_key(bad)}}}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "u", arr)

    def value(self, names) -> float:
        return float(self.u[self.axioms.mask_of(names)])


@dataclass(frozen=True)
class CapacityReport:
    """Classification flags from :func:`validate_capacity`.

    ``superadditive``/``subadditive`` are None when the bipartition sweep was
    skipped (J above the guard), in which case ``additivity_checked`` is False.
    """

    monotone: bool
    strict: bool
    superadditive: bool | None
    subadditive: bool | None
    additivity_checked: bool
    tolerance: float


def validate_capacity(cap: Capacity, tol: float = 1e-9) -> CapacityReport:
    """Report monotonicity (over covering pairs) and the additivity flags.

    Covering pairs suffice for monotonicity by transitivity.  Super- and
    sub-additivity enumerate every bipartition S = T + T' exhaustively, which
    costs 3**J pairs and is therefore skipped above J = 14.
    """
    u = cap.u
    j = cap.axioms.size
    masks = np.arange(cap.axioms.n_masks)
    monotone = True
    strict = True
    for b in range(j):
        bit = 1 << b
        with_b = masks[(masks & bit) != 0]
        diff = u[with_b] - u[with_b ^ bit]
        if np.any(diff < -tol):
            monotone = False
        if np.any(diff <= tol):
            strict = False
    if j > ADDITIVITY_CHECK_MAX_AXIOMS:
        return CapacityReport(monotone, strict, None, None, False, tol)
    superadditive = True
    subadditive = True
    for s in range(1, cap.axioms.n_masks):
        # proper non-empty submasks t of s; each unordered bipartition seen twice
        t = (s - 1) & s
        while t:
            split = u[t] + u[s ^ t]
            if u[s] < split - tol:
                superadditive = False
            if u[s] > split + tol:
                subadditive = False
            if not (superadditive or subadditive):
                return CapacityReport(monotone, strict, False, False, True, tol)
            t = (t - 1) & s
    return CapacityReport(monotone, strict, superadditive, subadditive, True, tol)


def cardinality_capacity(axioms: AxiomSet, g: Sequence[float]) -> Capacity:
    """Capacity depending only on subset size: u[S] = g[|S|].

    ``g`` must have length J + 1, start at 0, and be non-decreasing; convex g
    encodes uniform complementarity, concave g uniform substitutability.
    """
    g = np.asarray(g, dtype=np.float64)
    if g.ndim != 1 or g.shape[0] != axioms.size + 1:
        raise RangeError(f"g must list {axioms.size + 1} values, got {g.shape}")
    if g[0] != 0.0:
        raise MonotonicityError("g[0] must be 0 (empty subset)")
    if np.any(np.diff(g) < 0.0):
        raise MonotonicityError(f"g must be non-decreasing, got {g.tolist()}")
    return Capacity(axioms=axioms, u=g[popcounts(axioms.size)])


def capacity_moebius(cap: Capacity) -> np.ndarray:
    """Subset-order Moebius transform of the capacity (0 at the empty set)."""
    return moebius_subset(cap.u)


def normalize(cap: Capacity) -> Capacity:
    """Scale so the full axiom set has value 1 (requires u[A] > 0)."""
    total = float(cap.u[cap.axioms.full_mask])
    if total <= 0.0:
        raise RangeError("cannot normalize a capacity with u[A] <= 0")
    return Capacity(axioms=cap.axioms, u=cap.u / total)


# JSON schema mirrors the collection one: {"axioms": [...], "u": {...}}.


def capacity_from_json(data: dict) -> Capacity:
    from .collections import _axioms_from_json, _subset_map_from_json
    from .errors import ParseError

    if not isinstance(data, dict):
        raise ParseError("capacity document must be a JSON object")
    extra = set(data) - {"axioms", "u"}
    if extra:
        raise ParseError(f"unexpected top-level keys: {sorted(extra)}")
    if "axioms" not in data or "u" not in data:
        raise ParseError('capacity document needs "axioms" and "u"')
    axioms = _axioms_from_json(data["axioms"])
    values = _subset_map_from_json(axioms, data["u"], "u")
    u = np.zeros(axioms.n_masks)
    for mask, val in values.items():
        u[mask] = val
    try:
        return Capacity(axioms=axioms, u=u)
    except RangeError as exc:
        raise ParseError(str(exc)) from exc


def capacity_to_json(cap: Capacity) -> dict:
    return {
        "axioms": list(cap.axioms.labels),
        "u": {
            cap.axioms.subset_key(m): float(cap.u[m])
            for m in cap.axioms.nonempty_masks()
        },
    }
