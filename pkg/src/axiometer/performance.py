"""Capacity-weighted performance of rules from their satisfaction collections.

Three measures, all of the form "value = sum over non-empty subsets of
u[S] * weight[S]" and differing only in the weights:

* ``moebius`` — weights are the contributions (exact satisfaction
  probabilities), the measure singled out by the expected-valuation and
  same-contribution axioms;
* ``weighted_sum`` — weights are the raw probabilities p[S] (double counts
  nested subsets);
* ``min_diff`` — weights are p[S] minus the best strict-superset probability.

All three require a feasible collection: evaluating on an inconsistent p
would silently weight the capacity by negative "probabilities".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .capacities import Capacity
from .collections import DEFAULT_TOL, Collection, contributions, require_member
from .errors import RangeError, SchemaError
from .lattice import AxiomSet

MEASURE_TAGS = ("moebius", "weighted_sum", "min_diff")

#: Two values closer than this rank as a tie.
TIE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PerformanceResult:
    """Measure value plus the per-subset multipliers of u actually used."""

    value: float
    weights: np.ndarray
    measure: str
    axioms: AxiomSet


def _check_pair(cap: Capacity, c: Collection) -> None:
    if cap.axioms.labels != c.axioms.labels:
        raise SchemaError(
            f"capacity axioms {cap.axioms.labels} do not match "
            f"collection axioms {c.axioms.labels}"
        )


def _result(cap: Capacity, weights: np.ndarray, measure: str) -> PerformanceResult:
    weights = weights.copy()
    weights[0] = 0.0
    value = float(np.dot(cap.u[1:], weights[1:]))
    weights.setflags(write=False)
    return PerformanceResult(value=value, weights=weights, measure=measure, axioms=cap.axioms)


def perf_moebius(cap: Capacity, c: Collection, tol: float = DEFAULT_TOL) -> PerformanceResult:
    """Contribution-weighted measure: sum of u[S] * alpha[S]."""
    _check_pair(cap, c)
    require_member(c, tol)
    return _result(cap, contributions(c, tol).alpha, "moebius")


def perf_weighted_sum(cap: Capacity, c: Collection, tol: float = DEFAULT_TOL) -> PerformanceResult:
    """Plain weighted sum of u[S] * p[S]."""
    _check_pair(cap, c)
    require_member(c, tol)
    return _result(cap, c.p, "weighted_sum")


def strict_superset_max(c: Collection) -> np.ndarray:
    """For each subset, the largest probability among its strict supersets.

    The full set, having none, gets 0.
    """
    j = c.axioms.size
    best = c.p.copy()
    for b in range(j):
        v = best.reshape(-1, 2, 1 << b)
        np.maximum(v[:, 0, :], v[:, 1, :], out=v[:, 0, :])
    out = np.full(c.axioms.n_masks, -np.inf)
    masks = np.arange(c.axioms.n_masks)
    for b in range(j):
        bit = 1 << b
        without = masks[(masks & bit) == 0]
        out[without] = np.maximum(out[without], best[without | bit])
    out[c.axioms.full_mask] = 0.0
    return out


def perf_min_diff(cap: Capacity, c: Collection, tol: float = DEFAULT_TOL) -> PerformanceResult:
    """Weights are the margins p[S] minus max over strict supersets T of p[T]."""
    _check_pair(cap, c)
    require_member(c, tol)
    return _result(cap, c.p - strict_superset_max(c), "min_diff")


def moebius_weights(c: Collection, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Contribution weights on non-empty subsets (entry 0 zeroed), for reports."""
    require_member(c, tol)
    weights = contributions(c, tol).alpha.copy()
    weights[0] = 0.0
    return weights


_DISPATCH = {
    "moebius": perf_moebius,
    "weighted_sum": perf_weighted_sum,
    "min_diff": perf_min_diff,
}


def evaluate(
    cap: Capacity, c: Collection, measure: str = "moebius", tol: float = DEFAULT_TOL
) -> PerformanceResult:
    """Dispatch on the measure tag."""
    try:
        fn = _DISPATCH[measure]
    except KeyError:
        raise RangeError(f"unknown measure {measure!r}; choose from {MEASURE_TAGS}") from None
    return fn(cap, c, tol)


@dataclass(frozen=True)
class RankedEntry:
    """Position of one collection in a ranking; tied entries share a rank."""

    name: str
    value: float
    rank: int


def rank(
    entries: Iterable[tuple[str, Collection]],
    cap: Capacity,
    measure: str = "moebius",
    tol: float = DEFAULT_TOL,
) -> list[RankedEntry]:
    """Order named collections by measure value, descending.

    Values within ``TIE_TOL`` of a group head tie: they share the head's rank
    and keep their input order.
    """
    named = list(entries)
    if not named:
        return []
    axioms = named[0][1].axioms
    for name, c in named:
        if c.axioms.labels != axioms.labels:
            raise SchemaError(f"collection {name!r} uses a different axiom set")
    values = [evaluate(cap, c, measure, tol).value for _, c in named]
    order = sorted(range(len(named)), key=lambda i: (-values[i], i))
    ranked: list[RankedEntry] = []
    group: list[int] = []
    group_head = None

    def flush():
        start_rank = len(ranked) + 1
        for i in sorted(group):
            ranked.append(RankedEntry(name=named[i][0], value=values[i], rank=start_rank))

    for i in order:
        if group_head is None or values[i] < group_head - TIE_TOL:
            if group:
                flush()
            group = [i]
            group_head = values[i]
        else:
            group.append(i)
    flush()
    return ranked
