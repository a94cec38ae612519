import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_joint, covariance, matrix_to_terms
from posner_qnn import (
    BindingDistribution,
    JointPseudoSpinState,
    NormalizationError,
    entanglement_measure,
    joint_probs,
    p_react,
)

SINGLET_LIKE = {(0, 0): 1 / math.sqrt(3), (1, -1): 1 / math.sqrt(3), (-1, 1): 1 / math.sqrt(3)}


def uniform():
    return JointPseudoSpinState(np.full((3, 3), 1 / 3))


def random_state(rng):
    c = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    return JointPseudoSpinState(c / np.linalg.norm(c))


def random_product(rng):
    def vec():
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        return v / np.linalg.norm(v)

    return JointPseudoSpinState.product(vec(), vec())


class TestPReact:
    def test_concentrated_zero_zero(self):
        assert p_react(JointPseudoSpinState.from_terms({(0, 0): 1})) == 1.0

    def test_uniform(self):
        assert p_react(uniform()) == pytest.approx(1 / 3, abs=1e-15)

    def test_concentrated_one_one(self):
        assert p_react(JointPseudoSpinState.from_terms({(1, 1): 1j})) == 0.0

    def test_unnormalized(self):
        with pytest.raises(NormalizationError):
            p_react(JointPseudoSpinState(np.eye(3)))


class TestJointProbs:
    def test_both_bound(self):
        s = JointPseudoSpinState.from_terms({(0, 0): 1})
        assert joint_probs(s, s).as_tuple() == (1.0, 0.0, 0.0, 0.0)

    def test_correlated(self):
        s = JointPseudoSpinState.from_terms(SINGLET_LIKE)
        got = joint_probs(s, s).as_tuple()
        assert np.allclose(got, (1 / 3, 0, 0, 2 / 3), atol=1e-12)
        ref = brute_joint(SINGLET_LIKE, SINGLET_LIKE)
        assert np.allclose(got, (ref[1, 1], ref[1, 0], ref[0, 1], ref[0, 0]), atol=1e-12)

    def test_product_uniform(self):
        got = joint_probs(uniform(), uniform()).as_tuple()
        assert np.allclose(got, (1 / 9, 2 / 9, 2 / 9, 4 / 9), atol=1e-12)

    def test_matches_brute_force(self, rng):
        for _ in range(50):
            a, b = random_state(rng), random_state(rng)
            got = joint_probs(a, b).p
            ref = brute_joint(matrix_to_terms(a.coefficients), matrix_to_terms(b.coefficients))
            for (r, rp), v in ref.items():
                assert abs(got[r, rp] - v) < 1e-12

    def test_marginals(self, rng):
        """r is the binding of a with b, so its marginal is p_react of the product
        of a's and b's reduced pseudo-spin weights (likewise r' for a', b')."""
        def reduced(state, axis):
            return np.sqrt((np.abs(state.coefficients) ** 2).sum(axis=axis))

        for _ in range(200):
            a, b = random_state(rng), random_state(rng)
            p = joint_probs(a, b).p
            first = JointPseudoSpinState.product(reduced(a, 1), reduced(b, 1))
            second = JointPseudoSpinState.product(reduced(a, 0), reduced(b, 0))
            assert abs(p[1, :].sum() - p_react(first)) < 1e-12
            assert abs(p[:, 1].sum() - p_react(second)) < 1e-12

    def test_marginal_is_not_pair_p_react(self):
        s = JointPseudoSpinState.from_terms(SINGLET_LIKE)
        assert p_react(s) == pytest.approx(1.0)
        assert joint_probs(s, s).p[1, :].sum() == pytest.approx(1 / 3)


class TestEntanglement:
    def test_correlated(self):
        s = JointPseudoSpinState.from_terms(SINGLET_LIKE)
        assert entanglement_measure(joint_probs(s, s)) == pytest.approx(2 / 9, abs=1e-12)

    def test_product_uniform(self):
        assert abs(entanglement_measure(joint_probs(uniform(), uniform()))) < 1e-12

    def test_anticorrelated(self):
        d = BindingDistribution([[0, 0.5], [0.5, 0]])
        assert entanglement_measure(d) == pytest.approx(-0.25, abs=1e-15)

    def test_sign_reading(self):
        s = JointPseudoSpinState.from_terms(SINGLET_LIKE)
        assert entanglement_measure(joint_probs(s, s)) > 0
        assert entanglement_measure(BindingDistribution([[0.1, 0.4], [0.4, 0.1]])) < 0

    def test_separable_states(self, rng):
        for _ in range(100):
            d = joint_probs(random_product(rng), random_product(rng))
            assert abs(entanglement_measure(d)) < 1e-12

    @settings(max_examples=100)
    @given(st.integers(0, 2**32 - 1))
    def test_range_and_oracle(self, seed):
        rng = np.random.default_rng(seed)
        a, b = random_state(rng), random_state(rng)
        e = entanglement_measure(joint_probs(a, b))
        assert abs(e) <= 0.25 + 1e-15
        ref = covariance(brute_joint(matrix_to_terms(a.coefficients), matrix_to_terms(b.coefficients)))
        assert abs(e - ref) < 1e-12


def test_distribution_validation():
    with pytest.raises(NormalizationError):
        BindingDistribution([[0.5, 0.5], [0.5, 0.5]])
    with pytest.raises(NormalizationError):
        BindingDistribution([[-0.5, 0.5], [0.5, 0.5]])


def test_json_round_trip(rng):
    s = random_state(rng)
    back = JointPseudoSpinState.from_json(s.to_json())
    assert np.array_equal(back.coefficients, s.coefficients)
