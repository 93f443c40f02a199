"""Shared fixtures, the worked three-axiom inputs, and naive oracles.

The worked inputs follow the presentation order (a1, a2, a3, a1a2, a1a3,
a2a3, a1a2a3), which maps to masks (1, 2, 4, 3, 5, 6, 7).  Oracles here are
deliberately slow and structurally independent of the package's fast paths:
quadratic transform sums, explicit superset maxima, and linear-algebra world
distributions.
"""

from __future__ import annotations

import numpy as np
import pytest

from axiometer import AxiomSet, Capacity, Collection
from axiometer.lattice import popcounts

PRESENTATION_MASKS = (1, 2, 4, 3, 5, 6, 7)

BASELINE_P = (1.0, 0.8, 0.4, 0.8, 0.4, 0.35, 0.35)
FLAT_P = (0.7, 0.7, 0.7, 0.7, 0.7, 0.7, 0.4)
SYNERGY_SMALL_U = (1.0, 1.0, 1.0, 3.0, 3.0, 3.0, 6.0)
DECOMP_P = (0.7, 0.8, 0.5, 0.7, 0.25, 0.3, 0.25)  # also the worked alpha example
DECOMP_ALPHA = (0.0, 0.05, 0.2, 0.45, 0.0, 0.05, 0.25)
BASELINE_ALPHA = (0.15, 0.0, 0.0, 0.45, 0.05, 0.0, 0.35)
SYNERGY_U = (1.0, 1.0, 1.0, 5.0, 5.0, 5.0, 15.0)
STEADY_P = (0.7, 0.7, 0.7, 0.6, 0.6, 0.6, 0.6)
SPIKY_P = (1.0, 1.0, 0.45, 1.0, 0.45, 0.45, 0.45)
CONTRAST_P = (0.55, 0.6, 0.2, 0.35, 0.05, 0.15, 0.0)
CONTRAST_W_MIN_DIFF = (0.2, 0.25, 0.05, 0.35, 0.05, 0.15, 0.0)
CONTRAST_W_MOEBIUS = (0.15, 0.1, 0.0, 0.35, 0.05, 0.15, 0.0)


@pytest.fixture
def abc() -> AxiomSet:
    return AxiomSet(("a1", "a2", "a3"))


def presentation_to_masks(values) -> np.ndarray:
    """Spread 7 presentation-ordered values into a length-8 mask-indexed array."""
    out = np.zeros(8)
    for mask, val in zip(PRESENTATION_MASKS, values):
        out[mask] = val
    return out


def collection3(values) -> Collection:
    p = presentation_to_masks(values)
    p[0] = 1.0
    return Collection(axioms=AxiomSet(("a1", "a2", "a3")), p=p)


def capacity3(values) -> Capacity:
    return Capacity(axioms=AxiomSet(("a1", "a2", "a3")), u=presentation_to_masks(values))


def in_presentation_order(arr) -> list[float]:
    return [float(arr[m]) for m in PRESENTATION_MASKS]


# --- independent oracles ----------------------------------------------------


def naive_zeta_superset(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    out = np.zeros(n)
    for s in range(n):
        out[s] = sum(x[t] for t in range(n) if (t & s) == s)
    return out


def naive_moebius_superset(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    j = n.bit_length() - 1
    pc = popcounts(j)
    out = np.zeros(n)
    for s in range(n):
        out[s] = sum(
            (-1.0) ** int(pc[t] - pc[s]) * x[t] for t in range(n) if (t & s) == s
        )
    return out


def naive_zeta_subset(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    out = np.zeros(n)
    for s in range(n):
        out[s] = sum(x[t] for t in range(n) if (t & s) == t)
    return out


def naive_moebius_subset(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    j = n.bit_length() - 1
    pc = popcounts(j)
    out = np.zeros(n)
    for s in range(n):
        out[s] = sum(
            (-1.0) ** int(pc[s] - pc[t]) * x[t] for t in range(n) if (t & s) == t
        )
    return out


def naive_strict_superset_max(p: np.ndarray) -> np.ndarray:
    n = p.shape[0]
    out = np.zeros(n)
    for s in range(n):
        sups = [p[t] for t in range(n) if (t & s) == s and t != s]
        out[s] = max(sups) if sups else 0.0
    return out


def random_capacity(rng: np.random.Generator, axioms: AxiomSet) -> Capacity:
    """Monotone capacity from non-negative subset masses (zeta over subsets)."""
    from axiometer.lattice import zeta_subset

    masses = rng.uniform(0.0, 1.0, axioms.n_masks)
    masses[0] = 0.0
    return Capacity(axioms=axioms, u=zeta_subset(masses))


def random_feasible(rng: np.random.Generator, axioms: AxiomSet, concentration=1.0):
    from axiometer import random_collection

    return random_collection(axioms, rng, concentration)


def permute_collection(c: Collection, perm) -> Collection:
    """Relabel axiom i of the result as axiom perm[i] of the source."""
    n = c.axioms.n_masks
    q = np.empty(n)
    for mask in range(n):
        image = 0
        for i in range(c.axioms.size):
            if mask >> i & 1:
                image |= 1 << perm[i]
        q[mask] = c.p[image]
    return Collection(axioms=c.axioms, p=q)
