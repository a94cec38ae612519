import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dense_hadamard, dense_swap, dense_two_level
from posner_qnn import (
    Control,
    ControlledTwoLevelX,
    Hadamard,
    InvalidGateError,
    NormalizationError,
    RangeError,
    StateVector,
    Swap,
    TwoLevelBias,
    apply_gate,
    bias_matrix,
    init_basis,
    measure_all,
    probability_of,
)
from posner_qnn.statevector import apply_two_level, bits_to_index, index_to_bits, parse_bits

R2 = math.sqrt(2)
# hand algebra on the uniform 2-qubit state, theta = pi/4:
# U03: a0 = 1/sqrt2, a3 = 0; U02: a0 = 1/2 + sqrt2/4, a2 = 1/2 - sqrt2/4; U01: a0 = sqrt2/2 + 1/4, a1 = 1/4
CASCADE = np.array([R2 / 2 + 0.25, 0.25, 0.5 - R2 / 4, 0.0])


def uniform2():
    return StateVector([0.5, 0.5, 0.5, 0.5])


def random_state(rng, n):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(v / np.linalg.norm(v), n)


class TestBits:
    def test_parse_and_format(self):
        assert parse_bits("101") == (True, False, True)
        with pytest.raises(ValueError):
            parse_bits("102")

    @given(st.integers(min_value=1, max_value=16), st.data())
    def test_index_round_trip(self, width, data):
        k = data.draw(st.integers(min_value=0, max_value=2**width - 1))
        assert bits_to_index(index_to_bits(k, width)) == k

    def test_msb_is_qubit_zero(self):
        assert bits_to_index("10") == 2
        assert index_to_bits(1, 3) == "001"


class TestInitBasis:
    def test_examples(self):
        np.testing.assert_array_equal(init_basis(2, 0).amplitudes, [1, 0, 0, 0])
        np.testing.assert_array_equal(init_basis(2, 3).amplitudes, [0, 0, 0, 1])

    def test_out_of_range(self):
        with pytest.raises(RangeError):
            init_basis(1, 2)
        with pytest.raises(RangeError):
            init_basis(0, 0)

    def test_bit_string_index(self):
        assert init_basis(3, "110").amplitudes[6] == 1


class TestApplyGate:
    def test_hadamard(self):
        s = apply_gate(init_basis(1, 0), Hadamard(0))
        np.testing.assert_allclose(s.amplitudes, [1 / R2, 1 / R2], atol=1e-15)

    def test_single_bias_on_uniform(self):
        s = apply_gate(uniform2(), TwoLevelBias(math.pi / 4, 3, (0, 1)))
        np.testing.assert_allclose(s.amplitudes, [1 / R2, 0.5, 0.5, 0.0], atol=1e-12)

    def test_bias_cascade(self):
        s = uniform2()
        for i in (3, 2, 1):
            s.apply(TwoLevelBias(math.pi / 4, i, (0, 1)))
        np.testing.assert_allclose(s.amplitudes, CASCADE, atol=1e-12)
        np.testing.assert_allclose(s.amplitudes, [0.95711, 0.25, 0.14645, 0], atol=1e-5)
        assert s.norm() == pytest.approx(1.0, abs=1e-12)

    def test_apply_gate_copies_by_default(self):
        s = init_basis(1, 0)
        apply_gate(s, Hadamard(0))
        assert s.amplitudes[1] == 0
        apply_gate(s, Hadamard(0), inplace=True)
        assert s.amplitudes[1] != 0

    def test_controlled_x_respects_polarity(self):
        gate = ControlledTwoLevelX(1, (0,), [Control(1, True), Control(2, False)])
        fired = apply_gate(init_basis(3, "010"), gate)
        assert probability_of(fired, "110") == 1
        blocked = apply_gate(init_basis(3, "011"), gate)
        assert probability_of(blocked, "011") == 1

    def test_range_errors(self):
        with pytest.raises(RangeError):
            apply_gate(init_basis(2, 0), Hadamard(2))
        with pytest.raises(RangeError):
            apply_gate(init_basis(2, 0), TwoLevelBias(0.3, 1, (1, 2)))
        with pytest.raises(RangeError):
            apply_gate(init_basis(2, 0), ControlledTwoLevelX(1, (0,), [(3, True)]))

    def test_non_unitary_matrix_rejected(self):
        with pytest.raises(InvalidGateError):
            apply_two_level(init_basis(2, 0), np.array([[1, 1], [0, 1]]), 1, (0, 1))

    def test_unknown_gate_rejected(self):
        with pytest.raises(InvalidGateError):
            apply_gate(init_basis(1, 0), object())


def _gate_catalogue(n):
    """Every gate form on ``n`` qubits: all targets, registers, pair indices, controls."""
    gates = [Hadamard(q) for q in range(n)]
    gates += [Swap(a, b) for a, b in itertools.permutations(range(n), 2)]
    for width in range(1, n + 1):
        for register in itertools.permutations(range(n), width):
            rest = [q for q in range(n) if q not in register]
            for i in range(1, 2**width):
                gates.append(TwoLevelBias(0.37, i, register))
                for k in range(len(rest) + 1):
                    for cq in itertools.combinations(rest, k):
                        for pol in itertools.product((True, False), repeat=k):
                            gates.append(ControlledTwoLevelX(i, register, list(zip(cq, pol))))
    return gates


def _oracle(gate, n):
    if isinstance(gate, Hadamard):
        return dense_hadamard(gate.target, n)
    if isinstance(gate, Swap):
        return dense_swap(gate.a, gate.b, n)
    if isinstance(gate, TwoLevelBias):
        return dense_two_level(bias_matrix(gate.theta), gate.pair_index, gate.register, (), n)
    controls = [(c.qubit, c.positive) for c in gate.controls]
    return dense_two_level(np.array([[0, 1], [1, 0]]), gate.pair_index, gate.register, controls, n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kernel_matches_dense_oracle(n, rng):
    for gate in _gate_catalogue(n):
        dense = _oracle(gate, n)
        for _ in range(3):
            s = random_state(rng, n)
            got = apply_gate(s, gate).amplitudes
            assert np.abs(got - dense @ s.amplitudes).max() < 1e-12, gate


def test_two_level_locality(rng):
    s = random_state(rng, 3)
    before = s.amplitudes.copy()
    apply_gate(s, TwoLevelBias(0.5, 5, (0, 1, 2)), inplace=True)
    untouched = [k for k in range(8) if k not in (0, 5)]
    assert np.array_equal(s.amplitudes[untouched], before[untouched])


gate_strategy = st.one_of(
    st.builds(Hadamard, st.integers(0, 2)),
    st.builds(Swap, st.just(0), st.integers(1, 2)),
    st.builds(
        TwoLevelBias,
        st.floats(0.01, 1.56),
        st.integers(1, 7),
        st.just((0, 1, 2)),
    ),
    st.builds(
        ControlledTwoLevelX,
        st.integers(1, 3),
        st.just((1, 2)),
        st.lists(st.tuples(st.just(0), st.booleans()), max_size=1),
    ),
)


@settings(max_examples=200, deadline=None)
@given(gate_strategy, st.integers(0, 2**32 - 1))
def test_norm_preserved(gate, seed):
    s = random_state(np.random.default_rng(seed), 3)
    assert apply_gate(s, gate).norm() == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(gate_strategy, st.integers(0, 2**32 - 1), st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3))
def test_linearity(gate, seed, alpha, beta):
    rng = np.random.default_rng(seed)
    s1, s2 = random_state(rng, 3), random_state(rng, 3)
    combo = StateVector(alpha * s1.amplitudes + beta * s2.amplitudes, 3)
    lhs = apply_gate(combo, gate).amplitudes
    rhs = alpha * apply_gate(s1, gate).amplitudes + beta * apply_gate(s2, gate).amplitudes
    assert np.abs(lhs - rhs).max() < 1e-12


class TestMeasurement:
    def test_deterministic_basis_state(self, rng):
        s = StateVector([0, 0, 1, 0])
        assert {measure_all(s, rng) for _ in range(50)} == {"10"}

    def test_equal_superposition(self, rng):
        s = StateVector([1 / R2, 1 / R2])
        freq = sum(measure_all(s, rng) == "0" for _ in range(10_000)) / 10_000
        assert abs(freq - 0.5) <= 0.02

    def test_cascade_frequencies(self, rng):
        s = StateVector(CASCADE)
        draws = [measure_all(s, rng) for _ in range(10_000)]
        for k, expected in enumerate([0.91606, 0.0625, 0.02144, 0.0]):
            freq = draws.count(index_to_bits(k, 2)) / len(draws)
            assert abs(freq - expected) <= 0.01

    def test_soundness_band(self, rng):
        s = random_state(rng, 3)
        n_draws = 20_000
        draws = [measure_all(s, rng) for _ in range(n_draws)]
        for k in range(8):
            p = probability_of(s, k)
            freq = draws.count(index_to_bits(k, 3)) / n_draws
            assert abs(freq - p) <= 4 * math.sqrt(p * (1 - p) / n_draws) + 1e-12

    def test_unnormalized_rejected(self, rng):
        with pytest.raises(NormalizationError):
            measure_all(StateVector([1, 1]), rng)

    def test_seeded_replay(self):
        s = StateVector(CASCADE)
        a = [measure_all(s, np.random.default_rng(7)) for _ in range(5)]
        b = [measure_all(s, np.random.default_rng(7)) for _ in range(5)]
        assert a == b


class TestProbabilityOf:
    def test_examples(self):
        assert probability_of(StateVector([1, 0, 0, 0]), 0) == 1.0
        assert probability_of(StateVector([1 / R2, 1 / R2]), 1) == pytest.approx(0.5, abs=1e-15)
        assert probability_of(StateVector(CASCADE), 0) == pytest.approx(0.916053, abs=1e-6)

    def test_range(self):
        with pytest.raises(RangeError):
            probability_of(StateVector([1, 0]), 2)
