"""Collections of satisfaction probabilities: validation, decomposition, generation.

A collection assigns to every subset S of the axiom set the probability that
all axioms in S hold simultaneously.  The empty set is stored explicitly with
probability 1, so the same array serves both the "non-empty subsets only" view
and the extended view needed by the incompatibility machinery.

Feasible collections are exactly the convex combinations of the indicator
collections ``extreme(S)`` (all subsets of S satisfied surely, everything else
never) together with the all-zeros collection.  The weights of that unique
decomposition are the *contributions*: the superset Moebius transform of p.
Infeasible collections remain representable — feasibility is a check, not a
type invariant — so that inconsistent inputs can be diagnosed rather than
rejected at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateAxiomError,
    NegativeWeightError,
    ParseError,
    RangeError,
    SizeError,
    UnknownAxiomError,
)
from .lattice import (
    AxiomSet,
    moebius_superset,
    subset_vector,
    zeta_superset,
)

#: Default tolerance for membership and related report clamping.
DEFAULT_TOL = 1e-9

#: Largest J for which the dense worlds matrix (2**J - 1) x 2**J is materialized.
WORLDS_MATRIX_MAX_AXIOMS = 12


@dataclass(frozen=True, eq=False)
class Collection:
    """Per-subset satisfaction probabilities with p[empty] fixed to 1."""

    axioms: AxiomSet
    p: np.ndarray

    def __post_init__(self):
        arr = subset_vector(self.axioms, self.p)
        if arr[0] != 1.0:
            raise RangeError("probability of the empty subset must be exactly 1")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            bad = int(np.argmax((arr < 0.0) | (arr > 1.0)))
            raise RangeError(
                f"probability out of [0, 1] at subset "
                f"{{{self.axioms.subset_key(bad)}}}: {arr[bad]}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)

    def value(self, names) -> float:
        """Probability of satisfying all axioms in ``names`` simultaneously."""
        return float(self.p[self.axioms.mask_of(names)])


@dataclass(frozen=True, eq=False)
class ContributionVector:
    """Moebius coefficients of a collection over the superset order.

    ``alpha[S]`` for non-empty S is the probability of satisfying exactly the
    axioms in S and no others; ``alpha[0]`` is the leftover weight of the
    all-zeros extreme point.  ``support`` lists the masks with weight above
    ``tol`` (mask 0 included when the leftover is positive).
    """

    axioms: AxiomSet
    alpha: np.ndarray
    support: tuple[int, ...]
    tol: float

    @property
    def residual(self) -> float:
        """Weight attached to the empty set (the all-zeros extreme point)."""
        return float(self.alpha[0])


@dataclass(frozen=True)
class FrechetViolation:
    """One violated pairwise bound: subset S against S minus ``axiom``."""

    subset: int
    kind: str  # "monotonicity" | "lower_bound"
    axiom: str
    slack: float


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of a consistency check on a collection.

    ``checks`` records what was verified: ``"frechet"`` for the necessary
    pairwise bounds only, ``"full"`` for exact membership via contributions.
    ``feasible`` is None for the partial check when the bounds pass (they are
    necessary, not sufficient).
    """

    feasible: bool | None
    checks: str
    tolerance: float
    frechet_violations: tuple[FrechetViolation, ...] = ()
    negative_contributions: tuple[tuple[int, float], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.feasible)


def contributions(c: Collection, tol: float = DEFAULT_TOL) -> ContributionVector:
    """Decompose ``c`` into extreme-point weights (superset Moebius transform).

    Defined for any collection; weights may be negative exactly when ``c`` is
    infeasible.  For feasible collections this is the unique convex
    decomposition over the extreme collections, with ``alpha[0]`` absorbing
    the remainder (the weights over all masks sum to 1 identically because
    p[empty] = 1).
    """
    alpha = moebius_superset(c.p)
    support = tuple(int(m) for m in np.nonzero(alpha > tol)[0])
    alpha.setflags(write=False)
    return ContributionVector(axioms=c.axioms, alpha=alpha, support=support, tol=tol)


def _frechet_violations(c: Collection, tol: float) -> list[FrechetViolation]:
    p = c.p
    masks = np.arange(c.axioms.n_masks)
    out: list[FrechetViolation] = []
    for b, label in enumerate(c.axioms.labels):
        bit = 1 << b
        with_b = masks[(masks & bit) != 0]
        sub = with_b ^ bit
        mono = p[with_b] - p[sub]
        low = (p[sub] - (1.0 - p[bit])) - p[with_b]
        for i in np.nonzero(mono > tol)[0]:
            out.append(
                FrechetViolation(int(with_b[i]), "monotonicity", label, float(mono[i]))
            )
        for i in np.nonzero(low > tol)[0]:
            out.append(
                FrechetViolation(int(with_b[i]), "lower_bound", label, float(low[i]))
            )
    out.sort(key=lambda v: (v.subset, v.kind, v.axiom))
    return out


def frechet_check(c: Collection, tol: float = DEFAULT_TOL) -> FeasibilityReport:
    """Check the necessary pairwise bounds on ``c``.

    For every subset S and axiom a in S: p[S] <= p[S \\ a] and
    p[S] >= p[S \\ a] - (1 - p[a]).  Passing these bounds does not certify
    feasibility (the report says so via ``checks="frechet"``); failing any of
    them beyond ``tol`` certifies infeasibility.
    """
    violations = _frechet_violations(c, tol)
    return FeasibilityReport(
        feasible=False if violations else None,
        checks="frechet",
        tolerance=tol,
        frechet_violations=tuple(violations),
    )


def is_member(c: Collection, tol: float = DEFAULT_TOL) -> FeasibilityReport:
    """Exact membership check: feasible iff every contribution is >= -tol.

    The contribution at mask 0 encodes the residual 1 minus the sum of the
    non-empty weights, so the single sign condition covers both requirements
    of the convex decomposition.  Contributions in (-tol, 0) are treated as 0.
    """
    alpha = moebius_superset(c.p)
    bad = np.nonzero(alpha < -tol)[0]
    negatives = tuple((int(m), float(alpha[m])) for m in bad)
    feasible = not negatives
    frechet = () if feasible else tuple(_frechet_violations(c, tol))
    return FeasibilityReport(
        feasible=feasible,
        checks="full",
        tolerance=tol,
        frechet_violations=frechet,
        negative_contributions=negatives,
    )


def require_member(c: Collection, tol: float = DEFAULT_TOL) -> FeasibilityReport:
    """Return the membership report, raising InfeasibleCollectionError on failure."""
    from .errors import InfeasibleCollectionError

    report = is_member(c, tol)
    if not report.feasible:
        worst = min(report.negative_contributions, key=lambda t: t[1])
        raise InfeasibleCollectionError(
            f"collection is not a consistent probability assignment "
            f"(worst contribution {worst[1]:.6g} at subset "
            f"{{{c.axioms.subset_key(worst[0])}}})",
            report=report,
        )
    return report


def _from_weights(axioms: AxiomSet, alpha: np.ndarray) -> Collection:
    p = zeta_superset(alpha)
    np.clip(p, 0.0, 1.0, out=p)
    p[0] = 1.0
    return Collection(axioms=axioms, p=p)


def reconstruct(cv: ContributionVector) -> Collection:
    """Rebuild the collection from extreme-point weights (inverse of contributions).

    Requires non-negative weights summing to 1 (within 1e-9); raises
    NegativeWeightError otherwise.
    """
    alpha = np.asarray(cv.alpha, dtype=np.float64)
    if np.any(alpha < -1e-9):
        worst = int(np.argmin(alpha))
        raise NegativeWeightError(
            f"contribution weights must be non-negative (found {alpha[worst]:.6g})"
        )
    total = float(alpha.sum())
    if abs(total - 1.0) > 1e-9:
        raise NegativeWeightError(f"contribution weights must sum to 1, got {total!r}")
    return _from_weights(cv.axioms, np.maximum(alpha, 0.0))


def extreme(axioms: AxiomSet, mask: int) -> Collection:
    """The indicator collection of ``mask``: p[T] = 1 iff T is a subset of mask.

    ``mask = 0`` yields the all-zeros collection on non-empty subsets.
    """
    axioms._check_mask(mask)
    masks = np.arange(axioms.n_masks)
    p = ((masks & ~mask) == 0).astype(np.float64)
    return Collection(axioms=axioms, p=p)


def edge(axioms: AxiomSet, mask: int, lam: float) -> Collection:
    """Collection with p[T] = lam for non-empty subsets T of ``mask``, else 0.

    Lies on the edge between the all-zeros collection and ``extreme(mask)``.
    """
    axioms._check_mask(mask)
    if mask == 0:
        raise RangeError("edge collections need a non-empty subset")
    if not 0.0 <= lam <= 1.0:
        raise RangeError(f"edge weight must be in [0, 1], got {lam}")
    masks = np.arange(axioms.n_masks)
    p = np.where((masks & ~mask) == 0, lam, 0.0)
    p[0] = 1.0
    return Collection(axioms=axioms, p=p)


def random_collection(
    axioms: AxiomSet,
    seed: int | np.random.Generator,
    concentration: float = 1.0,
) -> Collection:
    """Draw a feasible collection: Dirichlet weights over the extreme points.

    Deterministic given an integer seed; pass a Generator to control the
    stream explicitly.  ``concentration`` is the symmetric Dirichlet
    parameter (large values concentrate near uniform weights).
    """
    if concentration <= 0.0:
        raise RangeError(f"concentration must be positive, got {concentration}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    weights = rng.dirichlet(np.full(axioms.n_masks, concentration))
    return _from_weights(axioms, weights)


def worlds_matrix(axioms: AxiomSet) -> np.ndarray:
    """Incidence matrix H (rows: non-empty subsets, columns: possible worlds).

    A world is the mask of simultaneously satisfied axioms; H[i-1, w] = 1 iff
    subset i is contained in world w.  A collection is feasible iff its
    non-empty entries equal H @ pi for some probability vector pi over worlds,
    and the contributions (with the residual at index 0) are exactly that pi —
    making this matrix an independent oracle for both the membership check and
    the zeta transform.  Materialized only for J <= 12.
    """
    j = axioms.size
    if j > WORLDS_MATRIX_MAX_AXIOMS:
        raise SizeError(
            f"worlds matrix is dense in 2**(2J); limited to J <= "
            f"{WORLDS_MATRIX_MAX_AXIOMS}, got J = {j}"
        )
    rows = np.arange(1, axioms.n_masks, dtype=np.int64)[:, None]
    cols = np.arange(axioms.n_masks, dtype=np.int64)[None, :]
    return ((rows & ~cols) == 0).astype(np.uint8)


# ---------------------------------------------------------------------------
# JSON schema: {"axioms": ["a1", ...], "p": {"a1": 1.0, "a1+a2": 0.8, ...}}
# Keys are "+"-joined axiom names, order-insensitive; every non-empty subset
# must appear exactly once and nothing else may appear.
# ---------------------------------------------------------------------------


def _axioms_from_json(data: object) -> AxiomSet:
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise ParseError('"axioms" must be a list of strings')
    try:
        return AxiomSet(tuple(data))
    except (RangeError, DuplicateAxiomError) as exc:
        raise ParseError(f"bad axiom list: {exc}") from exc


def _subset_map_from_json(
    axioms: AxiomSet, mapping: object, what: str
) -> dict[int, float]:
    if not isinstance(mapping, dict):
        raise ParseError(f'"{what}" must be an object keyed by subsets')
    values: dict[int, float] = {}
    for key, raw in mapping.items():
        try:
            mask = axioms.mask_of(str(key).split("+"))
        except (UnknownAxiomError, DuplicateAxiomError) as exc:
            raise ParseError(f"bad subset key {key!r}: {exc}") from exc
        if mask == 0:
            raise ParseError(f"bad subset key {key!r}: empty subset is implicit")
        if mask in values:
            raise ParseError(f"subset {{{axioms.subset_key(mask)}}} given twice")
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ParseError(f"value for {key!r} must be a number, got {raw!r}")
        values[mask] = float(raw)
    missing = [m for m in axioms.nonempty_masks() if m not in values]
    if missing:
        names = ", ".join(axioms.subset_key(m) for m in missing[:4])
        more = "" if len(missing) <= 4 else f" (+{len(missing) - 4} more)"
        raise ParseError(f'"{what}" is missing subsets: {names}{more}')
    return values


def collection_from_json(data: dict) -> Collection:
    """Parse the collection schema; raises ParseError on any deviation."""
    if not isinstance(data, dict):
        raise ParseError("collection document must be a JSON object")
    extra = set(data) - {"axioms", "p"}
    if extra:
        raise ParseError(f"unexpected top-level keys: {sorted(extra)}")
    if "axioms" not in data or "p" not in data:
        raise ParseError('collection document needs "axioms" and "p"')
    axioms = _axioms_from_json(data["axioms"])
    values = _subset_map_from_json(axioms, data["p"], "p")
    p = np.ones(axioms.n_masks)
    for mask, val in values.items():
        p[mask] = val
    try:
        return Collection(axioms=axioms, p=p)
    except RangeError as exc:
        raise ParseError(str(exc)) from exc


def collection_to_json(c: Collection) -> dict:
    """Serialize back to the collection schema (inverse of collection_from_json)."""
    return {
        "axioms": list(c.axioms.labels),
        "p": {c.axioms.subset_key(m): float(c.p[m]) for m in c.axioms.nonempty_masks()},
    }
