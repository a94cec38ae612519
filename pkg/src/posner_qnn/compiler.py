"""Truth table -> restricted-gate circuit, and evaluation of the result.

The compiled circuit has ``n`` register wires (``0..n-1``) and ``n`` ancilla
wires (``n..2n-1``). Gate order:

1. a Hadamard on every register wire;
2. bias gates on pairs ``(0, i)`` for ``i = 2^n - 1`` down to ``1``;
3. for table entry ``k = 1 .. 2^n - 1`` a two-level X on pair ``(0, k)``,
   controlled by the ancillas matching entry ``k``'s input (bit 1 -> positive
   control, bit 0 -> negative control). Entry 0 needs no gate.

Ancillas start in a basis state and only act as controls, so by default they
are simulated as classical bits on a ``2^n`` register state. ``full=True``
simulates all ``2n`` wires as qubits instead.

Per-trial random streams come from ``numpy.random.SeedSequence(seed).spawn``;
trial ``t`` always uses child ``t``.
"""
from __future__ import annotations

import warnings

import numpy as np

from .errors import ConfigurationError, NormalizationError
from .gates import (
    Circuit,
    Control,
    ControlledTwoLevelX,
    Hadamard,
    TwoLevelBias,
)
from .statevector import (
    NORM_TOL,
    StateVector,
    bits_to_index,
    index_to_bits,
    init_basis,
    measure_all,
    parse_bits,
)
from .theta import ThetaPolicy, check_eq3
from .truth_table import TruthTable


def compile_circuit(tt: TruthTable, policy: ThetaPolicy | None = None) -> Circuit:
    n = tt.n
    if policy is None:
        policy = ThetaPolicy.for_width(n)
    if policy.n != n:
        raise ConfigurationError(f"policy is for n={policy.n}, table has n={n}")
    if not check_eq3(n, policy.theta):
        warnings.warn(
            f"theta={policy.theta!r} does not give success probability > 1/2 at n={n}",
            RuntimeWarning,
            stacklevel=2,
        )
    register = tuple(range(n))
    ancillas = tuple(range(n, 2 * n))
    gates: list = [Hadamard(q) for q in register]
    gates += [TwoLevelBias(policy.theta, i, register) for i in range(2**n - 1, 0, -1)]
    for k in range(1, 2**n):
        bits = parse_bits(tt.entries[k].input)
        controls = tuple(Control(a, b) for a, b in zip(ancillas, bits))
        gates.append(ControlledTwoLevelX(k, register, controls))
    return Circuit(n, n, tuple(gates))


def _input_width(circuit: Circuit) -> int:
    return circuit.n_ancilla if circuit.n_ancilla else circuit.n_register


def _check_input(circuit: Circuit, bits: str) -> tuple[bool, ...]:
    try:
        values = parse_bits(bits)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None
    width = _input_width(circuit)
    if len(values) != width:
        raise ConfigurationError(f"input {bits!r} has {len(values)} bits, circuit expects {width}")
    return values


def simulate(circuit: Circuit, bits: str) -> StateVector:
    """Register state just before measurement, ancillas held classically.

    With ancillas present, ``bits`` initializes the ancillas and the register
    starts in ``|0...0>``. A circuit without ancillas loads ``bits`` straight
    into its register.
    """
    values = _check_input(circuit, bits)
    nr = circuit.n_register
    if not circuit.n_ancilla:
        state = init_basis(nr, bits)
        for gate in circuit.gates:
            state.apply(gate)
        return state

    classical = dict(zip(circuit.ancilla_wires, values))
    state = init_basis(nr, 0)
    for pos, gate in enumerate(circuit.gates):
        if isinstance(gate, ControlledTwoLevelX):
            if any(q >= nr for q in gate.register):
                raise ConfigurationError(f"gate {pos} targets an ancilla wire")
            quantum = []
            fires = True
            for c in gate.controls:
                if c.qubit in classical:
                    fires = fires and classical[c.qubit] == c.positive
                else:
                    quantum.append(c)
            if fires:
                state.apply(ControlledTwoLevelX(gate.pair_index, gate.register, tuple(quantum)))
        else:
            if any(q >= nr for q in gate.qubits):
                raise ConfigurationError(
                    f"gate {pos} acts on an ancilla wire; use full simulation"
                )
            state.apply(gate)
    return state


def simulate_full(circuit: Circuit, bits: str) -> StateVector:
    """All wires as qubits: register ``|0...0>``, ancillas ``|bits>``."""
    _check_input(circuit, bits)
    if not circuit.n_ancilla:
        return simulate(circuit, bits)
    state = init_basis(circuit.n_wires, "0" * circuit.n_register + bits)
    for gate in circuit.gates:
        state.apply(gate)
    return state


def register_probabilities(state: StateVector, n_register: int) -> np.ndarray:
    """Marginal Born probabilities of the leading ``n_register`` qubits."""
    probs = state.probabilities()
    return probs.reshape(2**n_register, -1).sum(axis=1)


def output_distribution(circuit: Circuit, bits: str, *, full: bool = False) -> dict[str, float]:
    """Exact probability of every register outcome, keyed in index order."""
    if full:
        state = simulate_full(circuit, bits)
        probs = register_probabilities(state, circuit.n_register)
    else:
        state = simulate(circuit, bits)
        probs = state.probabilities()
    total = float(probs.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise NormalizationError(f"output distribution sums to {total!r}")
    return {index_to_bits(k, circuit.n_register): float(p) for k, p in enumerate(probs)}


def most_likely(dist: dict[str, float]) -> tuple[str, float]:
    key = max(dist, key=lambda k: (dist[k], -bits_to_index(k)))
    return key, dist[key]


def evaluate(circuit: Circuit, bits: str, rng: np.random.Generator) -> str:
    """Run the circuit once and measure the register."""
    return measure_all(simulate(circuit, bits), rng)


def spawn_rngs(seed: int | None, count: int) -> list[np.random.Generator]:
    """Independent per-trial generators derived from one master seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(c) for c in children]


def run_trials(circuit: Circuit, bits: str, trials: int, seed: int | None) -> list[str]:
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")
    _check_input(circuit, bits)
    return [evaluate(circuit, bits, rng) for rng in spawn_rngs(seed, trials)]
