"""Preference profiles and ranking samplers for finite voting problems.

Rankings are strict total orders over ``m`` candidates, encoded as indices
into the lexicographic enumeration of all m! permutations.  A profile is one
ranking per voter.  Two samplers are provided: impartial culture (uniform
i.i.d. rankings) and the Mallows model, drawn by repeated insertion so that
the probability of a ranking is proportional to phi ** (Kendall tau distance
to the reference ranking).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from ..errors import RangeError

MIN_CANDIDATES = 3
MAX_CANDIDATES = 5
MIN_VOTERS = 1
MAX_VOTERS = 50


def check_problem_size(m: int, n: int) -> None:
    if not MIN_CANDIDATES <= m <= MAX_CANDIDATES:
        raise RangeError(f"candidate count must be in [{MIN_CANDIDATES}, {MAX_CANDIDATES}], got {m}")
    if not MIN_VOTERS <= n <= MAX_VOTERS:
        raise RangeError(f"voter count must be in [{MIN_VOTERS}, {MAX_VOTERS}], got {n}")


@dataclass(frozen=True)
class PermSpace:
    """Precomputed lookup tables over all m! rankings (cached per m).

    ``perms[k, pos]`` is the candidate at position ``pos`` of ranking k
    (position 0 = most preferred); ``rank[k, c]`` inverts it.  The score
    matrices turn a per-ranking count vector into rule scores by one matmul.
    ``raise_up[k, c]`` is the ranking obtained from k by moving candidate c
    one position towards the top (-1 when c is already on top).
    """

    m: int
    perms: np.ndarray
    rank: np.ndarray
    first: np.ndarray
    borda: np.ndarray
    last_neg: np.ndarray
    pair_flat: np.ndarray
    raise_up: np.ndarray

    @property
    def count(self) -> int:
        return self.perms.shape[0]


@lru_cache(maxsize=None)
def perm_space(m: int) -> PermSpace:
    perms = np.array(list(permutations(range(m))), dtype=np.int64)
    fact = perms.shape[0]
    rank = np.empty_like(perms)
    rank[np.arange(fact)[:, None], perms] = np.arange(m)[None, :]
    first = (rank == 0).astype(np.float64)
    borda = (m - 1 - rank).astype(np.float64)
    last_neg = -(rank == m - 1).astype(np.float64)
    pair = (rank[:, :, None] < rank[:, None, :]).astype(np.float64)
    index_of = {tuple(p): k for k, p in enumerate(perms.tolist())}
    raise_up = np.full((fact, m), -1, dtype=np.int64)
    for k, p in enumerate(perms.tolist()):
        for pos in range(1, m):
            q = list(p)
            q[pos - 1], q[pos] = q[pos], q[pos - 1]
            raise_up[k, p[pos]] = index_of[tuple(q)]
    for arr in (perms, rank, first, borda, last_neg, pair, raise_up):
        arr.setflags(write=False)
    return PermSpace(m, perms, rank, first, borda, last_neg, pair.reshape(fact, m * m), raise_up)


def encode_rankings(rankings: np.ndarray) -> np.ndarray:
    """Lexicographic permutation index for each row of a (B, m) order array."""
    r = np.asarray(rankings, dtype=np.int64)
    batch, m = r.shape
    idx = np.zeros(batch, dtype=np.int64)
    for i in range(m):
        smaller_after = np.zeros(batch, dtype=np.int64)
        for j in range(i + 1, m):
            smaller_after += r[:, j] < r[:, i]
        idx += smaller_after * math.factorial(m - 1 - i)
    return idx


@dataclass(frozen=True)
class Profile:
    """One strict ranking per voter, stored as permutation indices."""

    m: int
    n: int
    rankings: tuple[int, ...]

    def __post_init__(self):
        check_problem_size(self.m, self.n)
        rankings = tuple(int(r) for r in self.rankings)
        if len(rankings) != self.n:
            raise RangeError(f"expected {self.n} rankings, got {len(rankings)}")
        fact = math.factorial(self.m)
        for r in rankings:
            if not 0 <= r < fact:
                raise RangeError(f"ranking index {r} out of [0, {fact})")
        object.__setattr__(self, "rankings", rankings)

    @classmethod
    def from_orders(cls, orders) -> "Profile":
        """Build from explicit orders, e.g. [(0, 1, 2), (2, 0, 1)]."""
        orders = [tuple(o) for o in orders]
        if not orders:
            raise RangeError("a profile needs at least one voter")
        m = len(orders[0])
        for o in orders:
            if sorted(o) != list(range(m)):
                raise RangeError(f"not a permutation of 0..{m - 1}: {o}")
        idx = encode_rankings(np.array(orders))
        return cls(m=m, n=len(orders), rankings=tuple(int(i) for i in idx))

    def order(self, voter: int) -> tuple[int, ...]:
        """Candidates from most to least preferred for one voter."""
        return tuple(perm_space(self.m).perms[self.rankings[voter]].tolist())

    def as_array(self) -> np.ndarray:
        return np.asarray(self.rankings, dtype=np.int64)


class ImpartialCulture:
    """Uniform i.i.d. rankings."""

    kind = "impartial_culture"

    def ranking_pmf(self, m: int) -> np.ndarray:
        fact = math.factorial(m)
        return np.full(fact, 1.0 / fact)

    def sample(self, rng: np.random.Generator, m: int, shape) -> np.ndarray:
        return rng.integers(0, math.factorial(m), size=shape, dtype=np.int64)

    def __repr__(self):
        return "ImpartialCulture()"


@dataclass(frozen=True)
class Mallows:
    """Mallows model with dispersion ``phi`` and reference ranking ``sigma``.

    phi = 1 reduces to impartial culture; smaller phi concentrates mass near
    the reference.  Sampling uses repeated insertion: reference items are
    inserted one by one, slot s of t+1 receiving weight phi ** (t - s), which
    is exactly the number of inversions the insertion creates.
    """

    phi: float
    sigma: tuple[int, ...]

    kind = "mallows"

    def __post_init__(self):
        if not 0.0 < self.phi <= 1.0:
            raise RangeError(f"phi must be in (0, 1], got {self.phi}")
        sigma = tuple(int(c) for c in self.sigma)
        if sorted(sigma) != list(range(len(sigma))):
            raise RangeError(f"sigma must be a permutation of 0..m-1, got {sigma}")
        object.__setattr__(self, "sigma", sigma)

    def _check_m(self, m: int) -> None:
        if len(self.sigma) != m:
            raise RangeError(
                f"reference ranking has {len(self.sigma)} candidates, problem has {m}"
            )

    def ranking_pmf(self, m: int) -> np.ndarray:
        self._check_m(m)
        space = perm_space(m)
        positions = space.rank[:, list(self.sigma)]
        tau = np.zeros(space.count, dtype=np.int64)
        for i in range(m):
            for j in range(i + 1, m):
                tau += positions[:, i] > positions[:, j]
        pmf = self.phi ** tau.astype(np.float64)
        return pmf / pmf.sum()

    def sample(self, rng: np.random.Generator, m: int, shape) -> np.ndarray:
        self._check_m(m)
        count = int(np.prod(shape)) if shape else 1
        orders = np.empty((count, m), dtype=np.int64)
        orders[:, 0] = self.sigma[0]
        for t in range(1, m):
            weights = self.phi ** (t - np.arange(t + 1, dtype=np.float64))
            cum = np.cumsum(weights)
            cum /= cum[-1]
            slot = np.searchsorted(cum, rng.random(count), side="right")
            cur = orders[:, :t].copy()
            cols = np.arange(t + 1)[None, :]
            src = np.clip(cols - (cols > slot[:, None]), 0, t - 1)
            orders[:, : t + 1] = np.take_along_axis(cur, src, axis=1)
            orders[np.arange(count), slot] = self.sigma[t]
        return encode_rankings(orders).reshape(shape)
