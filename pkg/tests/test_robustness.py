"""Family summaries, alpha-maxmin scores, and the three partial criteria."""

import numpy as np
import pytest

from axiometer import (
    AlignmentError,
    AxiomSet,
    Capacity,
    Collection,
    CollectionFamily,
    ParseError,
    RangeError,
    SchemaError,
    WeightError,
    alpha_maxmin_score,
    compare_max_and_min,
    compare_min_vs_max,
    compare_pointwise,
    edge,
    extreme,
    family_from_json,
    family_to_json,
    family_values,
    perf_moebius,
    perf_weighted_sum,
    summarize,
)

from conftest import BASELINE_P, collection3, random_capacity, random_feasible

ONE = AxiomSet(("a",))
UNIT_CAP = Capacity(axioms=ONE, u=np.array([0.0, 1.0]))


def fam(values, names=None) -> CollectionFamily:
    """Single-axiom family whose measure values under UNIT_CAP are ``values``."""
    members = tuple(
        Collection(axioms=ONE, p=np.array([1.0, v])) for v in values
    )
    names = tuple(names) if names else tuple(f"model_{k}" for k in range(len(values)))
    return CollectionFamily(axioms=ONE, members=members, model_names=names)


class TestSummarize:
    def test_single_member_identity(self):
        family = fam([0.4])
        np.testing.assert_array_equal(summarize(family).p, family.members[0].p)

    def test_uniform_over_copies_is_identity(self):
        c = collection3(BASELINE_P)
        family = CollectionFamily(
            axioms=c.axioms, members=(c, c), model_names=("one", "two")
        )
        np.testing.assert_allclose(summarize(family).p, c.p, atol=1e-15)

    def test_mixture_of_extreme_and_zero_is_edge(self, abc):
        lam = 0.35
        family = CollectionFamily(
            axioms=abc,
            members=(extreme(abc, 0b011), extreme(abc, 0)),
            model_names=("hi", "lo"),
        )
        mixed = summarize(family, [lam, 1 - lam])
        np.testing.assert_allclose(mixed.p, edge(abc, 0b011, lam).p, atol=1e-15)

    def test_weight_validation(self):
        family = fam([0.2, 0.6])
        with pytest.raises(WeightError):
            summarize(family, [0.7, 0.7])
        with pytest.raises(WeightError):
            summarize(family, [-0.1, 1.1])
        with pytest.raises(WeightError):
            summarize(family, [1.0])


class TestAlphaMaxmin:
    def test_singleton_family_any_alpha(self):
        family = fam([0.4])
        for alpha in (0.0, 0.3, 1.0):
            assert alpha_maxmin_score(UNIT_CAP, family, alpha) == pytest.approx(0.4)

    def test_extremes_select_min_and_max(self):
        family = fam([0.2, 0.9, 0.5])
        assert alpha_maxmin_score(UNIT_CAP, family, 0.0) == pytest.approx(0.2)
        assert alpha_maxmin_score(UNIT_CAP, family, 1.0) == pytest.approx(0.9)

    def test_alpha_out_of_range(self):
        with pytest.raises(RangeError):
            alpha_maxmin_score(UNIT_CAP, fam([0.5]), 1.5)


class TestMaxAndMin:
    def test_crossing_families_incomparable(self):
        assert compare_max_and_min(UNIT_CAP, fam([0.3, 0.1]), fam([0.2, 0.2])).verdict == "incomparable"

    def test_identical_families_equivalent(self):
        assert compare_max_and_min(UNIT_CAP, fam([0.3, 0.1]), fam([0.3, 0.1])).verdict == "equivalent"

    def test_dominating_family_better(self):
        assert compare_max_and_min(UNIT_CAP, fam([0.3, 0.2]), fam([0.2, 0.1])).verdict == "better"
        assert compare_max_and_min(UNIT_CAP, fam([0.2, 0.1]), fam([0.3, 0.2])).verdict == "worse"

    def test_mixed_axiom_sets_rejected(self, abc):
        c = collection3(BASELINE_P)
        other = CollectionFamily(axioms=c.axioms, members=(c,), model_names=("m",))
        with pytest.raises(SchemaError):
            compare_max_and_min(UNIT_CAP, fam([0.5]), other)


class TestPointwise:
    def test_weak_dominance_with_strict_entry(self):
        assert compare_pointwise(UNIT_CAP, fam([0.5, 0.4]), fam([0.4, 0.4])).verdict == "better"

    def test_crossing_values_incomparable(self):
        assert compare_pointwise(UNIT_CAP, fam([0.5, 0.3]), fam([0.4, 0.4])).verdict == "incomparable"

    def test_equal_families_equivalent(self):
        assert compare_pointwise(UNIT_CAP, fam([0.5, 0.3]), fam([0.5, 0.3])).verdict == "equivalent"

    def test_misaligned_model_lists_rejected(self):
        f = fam([0.5, 0.3], names=("ic", "mallows"))
        g = fam([0.4, 0.2], names=("mallows", "ic"))
        with pytest.raises(AlignmentError):
            compare_pointwise(UNIT_CAP, f, g)
        with pytest.raises(AlignmentError):
            compare_pointwise(UNIT_CAP, f, fam([0.4], names=("ic",)))


class TestMinVsMax:
    def test_separated_families(self):
        assert compare_min_vs_max(UNIT_CAP, fam([0.4, 0.5]), fam([0.1, 0.3])).verdict == "better"
        assert compare_min_vs_max(UNIT_CAP, fam([0.1, 0.3]), fam([0.4, 0.5])).verdict == "worse"

    def test_overlapping_families_incomparable(self):
        assert compare_min_vs_max(UNIT_CAP, fam([0.4, 0.5]), fam([0.45, 0.46])).verdict == "incomparable"

    def test_constant_equal_families_equivalent(self):
        assert compare_min_vs_max(UNIT_CAP, fam([0.3, 0.3]), fam([0.3, 0.3])).verdict == "equivalent"


def _direction(verdict):
    return {"better": 1, "worse": -1, "equivalent": 0}.get(verdict)


def test_criteria_nest_on_random_families():
    rng = np.random.default_rng(131)
    for _ in range(1000):
        j = int(rng.integers(1, 7))
        k = int(rng.integers(1, 6))
        axioms = AxiomSet(tuple(f"a{i}" for i in range(j)))
        cap = random_capacity(rng, axioms)
        names = tuple(f"model_{i}" for i in range(k))
        fam_f = CollectionFamily(
            axioms=axioms,
            members=tuple(random_feasible(rng, axioms) for _ in range(k)),
            model_names=names,
        )
        fam_g = CollectionFamily(
            axioms=axioms,
            members=tuple(random_feasible(rng, axioms) for _ in range(k)),
            model_names=names,
        )
        strictest = _direction(compare_min_vs_max(cap, fam_f, fam_g).verdict)
        middle = _direction(compare_pointwise(cap, fam_f, fam_g).verdict)
        weakest = _direction(compare_max_and_min(cap, fam_f, fam_g).verdict)
        if strictest is not None:
            assert middle is not None
            assert strictest == middle or middle == 0 or strictest == 0
        if middle is not None:
            assert weakest is not None
            assert middle == weakest or weakest == 0 or middle == 0
        # alpha-maxmin is complete and agrees with a decisive max-and-min
        for alpha in (0.0, 0.5, 1.0):
            sf = alpha_maxmin_score(cap, fam_f, alpha)
            sg = alpha_maxmin_score(cap, fam_g, alpha)
            if weakest == 1:
                assert sf >= sg - 1e-9
            elif weakest == -1:
                assert sf <= sg + 1e-9


def test_summary_commutes_with_both_linear_measures():
    rng = np.random.default_rng(137)
    for _ in range(100):
        j = int(rng.integers(1, 6))
        k = int(rng.integers(1, 5))
        axioms = AxiomSet(tuple(f"a{i}" for i in range(j)))
        cap = random_capacity(rng, axioms)
        members = tuple(random_feasible(rng, axioms) for _ in range(k))
        family = CollectionFamily(
            axioms=axioms,
            members=members,
            model_names=tuple(f"m{i}" for i in range(k)),
        )
        beta = rng.dirichlet(np.ones(k))
        mixed = summarize(family, beta)
        for measure_fn in (perf_weighted_sum, perf_moebius):
            direct = measure_fn(cap, mixed).value
            averaged = float(
                np.dot(beta, [measure_fn(cap, c).value for c in members])
            )
            assert direct == pytest.approx(averaged, abs=1e-9)


def test_family_values_order():
    family = fam([0.5, 0.2, 0.8])
    np.testing.assert_allclose(family_values(UNIT_CAP, family), [0.5, 0.2, 0.8])


class TestFamilyJson:
    def test_roundtrip(self, abc):
        family = CollectionFamily(
            axioms=abc,
            members=(collection3(BASELINE_P), extreme(abc, 7)),
            model_names=("ic", "mallows_0.8"),
        )
        doc = family_to_json(family)
        again = family_from_json(doc)
        assert again.model_names == family.model_names
        for a, b in zip(again.members, family.members):
            np.testing.assert_array_equal(a.p, b.p)

    def test_accepts_embedded_collection_objects(self, abc):
        from axiometer import collection_to_json

        doc = {
            "axioms": ["a1", "a2", "a3"],
            "models": ["only"],
            "collections": [collection_to_json(collection3(BASELINE_P))],
        }
        family = family_from_json(doc)
        np.testing.assert_array_equal(family.members[0].p, collection3(BASELINE_P).p)

    def test_model_count_mismatch(self, abc):
        doc = family_to_json(
            CollectionFamily(axioms=abc, members=(extreme(abc, 7),), model_names=("m",))
        )
        doc["models"] = ["m", "extra"]
        with pytest.raises(ParseError):
            family_from_json(doc)

    def test_infeasible_member_rejected(self, abc):
        from axiometer import InfeasibleCollectionError

        doc = {
            "axioms": ["a1", "a2", "a3"],
            "models": ["bad"],
            "collections": [
                {
                    "a1": 0.7, "a2": 0.7, "a3": 0.7,
                    "a1+a2": 0.7, "a1+a3": 0.7, "a2+a3": 0.7,
                    "a1+a2+a3": 0.4,
                }
            ],
        }
        with pytest.raises(InfeasibleCollectionError):
            family_from_json(doc)
