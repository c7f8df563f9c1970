"""Weights on finite point sets: monad structure, products, modularity."""

import numpy as np
import pytest

from qborn.errors import (
    TargetMismatchError,
    UnknownPointError,
    ValidationError,
    ZeroMassError,
)
from qborn.valuations import (
    FiniteValuation,
    ProbabilityValuation,
    bind,
    dirac,
    measure,
    modular_check,
    normalize,
    product,
    pushforward,
    valuation_from_json,
    valuation_to_json,
)


def random_valuation(rng, max_points=8):
    k = int(rng.integers(1, max_points + 1))
    return FiniteValuation(tuple(range(1, k + 1)), tuple(rng.uniform(0, 2, size=k)))


class TestConstruction:
    def test_negative_weight_rejected(self):
        with pytest.raises(ValidationError):
            FiniteValuation(("a",), (-0.1,))

    def test_duplicate_points_rejected(self):
        with pytest.raises(ValidationError):
            FiniteValuation(("a", "a"), (0.5, 0.5))

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            FiniteValuation(("a",), (0.5, 0.5))

    def test_probability_total_enforced(self):
        with pytest.raises(ValidationError):
            ProbabilityValuation(("a", "b"), (0.5, 0.6))
        ProbabilityValuation(("a", "b"), (0.5, 0.5))

    def test_unknown_point_lookup(self):
        v = FiniteValuation(("a",), (1.0,))
        with pytest.raises(UnknownPointError):
            v.weight("b")


class TestMeasure:
    def test_empty_subset_is_zero(self):
        v = FiniteValuation(("a", "b"), (0.3, 0.7))
        assert measure(v, ()) == 0.0

    def test_singleton_reads_weight(self):
        v = FiniteValuation(("a", "b"), (0.3, 0.7))
        assert measure(v, ("a",)) == pytest.approx(0.3)

    def test_whole_space_is_total(self):
        v = FiniteValuation(("a", "b"), (0.3, 0.7))
        assert measure(v, ("a", "b")) == pytest.approx(1.0)
        assert v.total == pytest.approx(1.0)

    def test_outside_point_rejected(self):
        v = FiniteValuation(("a",), (1.0,))
        with pytest.raises(UnknownPointError):
            measure(v, ("z",))


class TestDiracAndPushforward:
    def test_dirac_weights(self):
        d = dirac("a", ("a", "b"))
        assert d.as_dict() == {"a": 1.0, "b": 0.0}
        assert measure(d, ("b",)) == 0.0

    def test_dirac_needs_member(self):
        with pytest.raises(UnknownPointError):
            dirac("z", ("a", "b"))

    def test_identity_pushforward(self):
        v = FiniteValuation((1, 2), (0.4, 0.6))
        out = pushforward(v, lambda p: p, target_points=(1, 2))
        assert out.isclose(v)

    def test_constant_pushforward_collects_mass(self):
        v = FiniteValuation((1, 2, 3), (0.2, 0.3, 0.5))
        out = pushforward(v, lambda p: "x")
        assert out.as_dict() == {"x": pytest.approx(1.0)}

    def test_fibre_sums(self):
        v = FiniteValuation((1, 2, 3), (0.2, 0.3, 0.5))
        out = pushforward(v, {1: "a", 2: "a", 3: "b"}.__getitem__)
        assert out.as_dict()["a"] == pytest.approx(0.5)
        assert out.as_dict()["b"] == pytest.approx(0.5)

    def test_target_escape_rejected(self):
        v = FiniteValuation((1,), (1.0,))
        with pytest.raises(TargetMismatchError):
            pushforward(v, lambda p: "x", target_points=("y",))

    def test_functoriality_on_random_input(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            v = random_valuation(rng)
            f = {p: (p % 3) for p in v.points}.__getitem__
            g = {0: "e", 1: "o", 2: "o"}.__getitem__
            once = pushforward(v, lambda p: g(f(p)))
            twice = pushforward(pushforward(v, f), g)
            assert once.isclose(twice, atol=1e-12)


class TestBind:
    def test_left_unit(self):
        space = ("a", "b")
        target = (1, 2)
        k = {"a": FiniteValuation(target, (1.0, 0.0)), "b": FiniteValuation(target, (0.25, 0.75))}
        out = bind(dirac("a", space), k.__getitem__, target)
        assert out.isclose(k["a"], atol=1e-15)

    def test_right_unit(self):
        v = FiniteValuation((1, 2, 3), (0.1, 0.2, 0.7))
        out = bind(v, lambda p: dirac(p, v.points), v.points)
        assert out.isclose(v, atol=1e-15)

    def test_weighted_mixture(self):
        v = FiniteValuation(("a", "b"), (0.5, 0.5))
        k = {
            "a": FiniteValuation((0, 1), (1.0, 0.0)),
            "b": FiniteValuation((0, 1), (0.5, 0.5)),
        }
        out = bind(v, k.__getitem__, (0, 1))
        assert out.as_dict()[0] == pytest.approx(0.75)
        assert out.as_dict()[1] == pytest.approx(0.25)

    def test_kernel_on_wrong_carrier_rejected(self):
        v = FiniteValuation(("a",), (1.0,))
        with pytest.raises(TargetMismatchError):
            bind(v, lambda p: FiniteValuation((9,), (1.0,)), (0, 1))

    def test_associativity_on_random_input(self):
        rng = np.random.default_rng(43)
        mid = (0, 1, 2)
        final = ("x", "y")
        for _ in range(50):
            v = random_valuation(rng)
            ks = {p: FiniteValuation(mid, tuple(rng.uniform(0, 1, 3))) for p in v.points}
            hs = {q: FiniteValuation(final, tuple(rng.uniform(0, 1, 2))) for q in mid}
            lhs = bind(bind(v, ks.__getitem__, mid), hs.__getitem__, final)
            rhs = bind(v, lambda p: bind(ks[p], hs.__getitem__, final), final)
            assert lhs.isclose(rhs, atol=1e-12)


class TestProductAndNormalize:
    def test_single_cell(self):
        out = product(FiniteValuation(("a",), (2.0,)), FiniteValuation(("b",), (3.0,)))
        assert out.as_dict() == {("a", "b"): pytest.approx(6.0)}

    def test_uniform_square(self):
        u = FiniteValuation((1, 2), (0.5, 0.5))
        out = product(u, u)
        assert all(w == pytest.approx(0.25) for w in out.weights)
        assert len(out.points) == 4

    def test_marginals_scale_by_mass(self):
        rng = np.random.default_rng(44)
        v, w = random_valuation(rng), random_valuation(rng)
        joint = product(v, w)
        left = pushforward(joint, lambda pq: pq[0], target_points=v.points)
        for p in v.points:
            assert left.weight(p) == pytest.approx(v.weight(p) * w.total, abs=1e-12)

    def test_swap_symmetry(self):
        rng = np.random.default_rng(45)
        v, w = random_valuation(rng), random_valuation(rng)
        swapped = pushforward(
            product(v, w),
            lambda pq: (pq[1], pq[0]),
            target_points=tuple((q, p) for p in v.points for q in w.points),
        )
        assert swapped.isclose(product(w, v), atol=1e-12)

    def test_normalize(self):
        out = normalize(FiniteValuation(("a", "b"), (2.0, 2.0)))
        assert isinstance(out, ProbabilityValuation)
        assert out.as_dict() == {"a": pytest.approx(0.5), "b": pytest.approx(0.5)}

    def test_normalize_fixed_point(self):
        p = ProbabilityValuation(("a", "b"), (0.25, 0.75))
        assert normalize(p).isclose(p, atol=1e-15)

    def test_zero_mass_rejected(self):
        with pytest.raises(ZeroMassError):
            normalize(FiniteValuation(("a",), (0.0,)))


class TestModularLaw:
    def test_disjoint_additivity(self):
        v = FiniteValuation((1, 2, 3), (0.2, 0.3, 0.5))
        assert modular_check(v, {1}, {2, 3})

    def test_equal_subsets(self):
        v = FiniteValuation((1, 2), (0.5, 0.5))
        assert modular_check(v, {1}, {1})

    def test_random_subsets(self):
        rng = np.random.default_rng(46)
        for _ in range(50):
            v = random_valuation(rng)
            pts = list(v.points)
            u = {p for p in pts if rng.uniform() < 0.5}
            w = {p for p in pts if rng.uniform() < 0.5}
            assert modular_check(v, u, w)


class TestValuationJson:
    def test_round_trip_plain_labels(self):
        v = FiniteValuation((1, 2, 3), (0.25, 0.5, 0.25))
        assert valuation_from_json(valuation_to_json(v)).isclose(v, atol=0)

    def test_round_trip_pair_labels(self):
        v = FiniteValuation(((1, 1), (1, 2)), (0.5, 1.5))
        back = valuation_from_json(valuation_to_json(v))
        assert back.points == ((1, 1), (1, 2))

    def test_missing_fields_rejected(self):
        with pytest.raises(ValidationError):
            valuation_from_json({"points": [1]})
