"""Restricted gate set, circuits over it, and the gate-level bias decomposition.

The gate set contains exactly four forms:

* ``Hadamard(target)``
* ``Swap(a, b)``
* ``TwoLevelBias(theta, pair_index, register)`` - the two-level gate acting on
  basis states ``|0>`` and ``|pair_index>`` of ``register`` with matrix
  ``[[cos t, sin t], [sin t, -cos t]]``
* ``ControlledTwoLevelX(pair_index, register, controls)`` - swaps the
  amplitudes of ``|0>`` and ``|pair_index>`` of ``register`` when every
  control matches its polarity.

Qubit 0 is the most significant bit of a basis index, and ``register[0]`` is
the most significant bit of ``pair_index``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from .errors import InvalidGateError

X_MATRIX = np.array([[0, 1], [1, 0]], dtype=complex)
Z_MATRIX = np.array([[1, 0], [0, -1]], dtype=complex)
H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
S_MATRIX = np.array([[1, 0], [0, 1j]], dtype=complex)
S_INV_MATRIX = S_MATRIX.conj().T


class Control(NamedTuple):
    qubit: int
    positive: bool = True


def _as_controls(controls) -> tuple[Control, ...]:
    out = []
    for c in controls:
        if isinstance(c, Control):
            out.append(c)
        else:
            q, pol = c
            out.append(Control(int(q), bool(pol)))
    return tuple(out)


def _check_two_level(pair_index: int, register: tuple[int, ...]) -> None:
    if not register:
        raise InvalidGateError("two-level gate needs a non-empty register")
    if len(set(register)) != len(register):
        raise InvalidGateError(f"repeated qubit in register {register}")
    if any(q < 0 for q in register):
        raise InvalidGateError(f"negative qubit index in register {register}")
    if not 1 <= pair_index < 2 ** len(register):
        raise InvalidGateError(
            f"pair index {pair_index} outside [1, {2 ** len(register)}) "
            f"for a {len(register)}-qubit register"
        )


@dataclass(frozen=True)
class Hadamard:
    target: int

    def __post_init__(self):
        if self.target < 0:
            raise InvalidGateError(f"negative qubit index {self.target}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class Swap:
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise InvalidGateError("swap needs two distinct qubits")
        if self.a < 0 or self.b < 0:
            raise InvalidGateError("negative qubit index in swap")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.a, self.b)


@dataclass(frozen=True)
class TwoLevelBias:
    theta: float
    pair_index: int
    register: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "register", tuple(int(q) for q in self.register))
        _check_two_level(self.pair_index, self.register)

    @property
    def controls(self) -> tuple[Control, ...]:
        return ()

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.register

    def matrix(self) -> np.ndarray:
        return bias_matrix(self.theta)


@dataclass(frozen=True)
class ControlledTwoLevelX:
    pair_index: int
    register: tuple[int, ...]
    controls: tuple[Control, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "register", tuple(int(q) for q in self.register))
        object.__setattr__(self, "controls", _as_controls(self.controls))
        _check_two_level(self.pair_index, self.register)
        cq = [c.qubit for c in self.controls]
        if len(set(cq)) != len(cq):
            raise InvalidGateError(f"repeated control qubit in {cq}")
        if set(cq) & set(self.register):
            raise InvalidGateError("control qubits overlap the register")
        if any(q < 0 for q in cq):
            raise InvalidGateError("negative control qubit index")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.register + tuple(c.qubit for c in self.controls)

    def matrix(self) -> np.ndarray:
        return X_MATRIX.copy()


Gate = Union[Hadamard, Swap, TwoLevelBias, ControlledTwoLevelX]
GATE_TYPES = (Hadamard, Swap, TwoLevelBias, ControlledTwoLevelX)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate sequence over ``n_register + n_ancilla`` wires.

    Register wires are ``0 .. n_register-1``; ancilla wires follow them.
    Ancillas only ever serve as controls and may be simulated classically.
    """

    n_register: int
    n_ancilla: int = 0
    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_register < 1 or self.n_ancilla < 0:
            raise InvalidGateError(
                f"bad circuit widths ({self.n_register}, {self.n_ancilla})"
            )

    @property
    def n_wires(self) -> int:
        return self.n_register + self.n_ancilla

    @property
    def register_wires(self) -> tuple[int, ...]:
        return tuple(range(self.n_register))

    @property
    def ancilla_wires(self) -> tuple[int, ...]:
        return tuple(range(self.n_register, self.n_wires))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def bias_matrix(theta: float) -> np.ndarray:
    """Return ``[[cos t, sin t], [sin t, -cos t]]`` as a complex 2x2 array."""
    if not 0.0 < theta < math.pi / 2:
        warnings.warn(
            f"bias angle {theta!r} lies outside the open interval (0, pi/2)",
            RuntimeWarning,
            stacklevel=2,
        )
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [s, -c]], dtype=complex)


def rz_matrix(angle: float) -> np.ndarray:
    """``exp(-i angle Z / 2)``."""
    return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])


class Primitive(NamedTuple):
    name: str
    matrix: np.ndarray


def decompose_bias(theta: float) -> list[Primitive]:
    """Gate-level realization of the bias gate, in application order.

    A Z gate is followed by the basis change S^-1, H, S^-1 that turns z-rotations
    into y-rotations, a z-rotation by ``2*theta`` (``exp(-i theta Z)``), and the
    inverse basis change S, H, S. The product equals ``bias_matrix(theta)``.
    """
    basis = [
        Primitive("S_inv", S_INV_MATRIX),
        Primitive("H", H_MATRIX),
        Primitive("S_inv", S_INV_MATRIX),
    ]
    inverse = [Primitive("S", S_MATRIX), Primitive("H", H_MATRIX), Primitive("S", S_MATRIX)]
    return (
        [Primitive("Z", Z_MATRIX)]
        + basis
        + [Primitive(f"RZ({2 * theta!r})", rz_matrix(2 * theta))]
        + inverse
    )


def compose(primitives: list[Primitive]) -> np.ndarray:
    """Multiply primitives given in application order (first applied = rightmost)."""
    out = np.eye(2, dtype=complex)
    for p in primitives:
        out = p.matrix @ out
    return out


def is_unitary(matrix: np.ndarray, atol: float = 1e-10) -> bool:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()) <= atol


class Violation(NamedTuple):
    position: int
    reason: str

    def __str__(self) -> str:
        return f"gate {self.position}: {self.reason}"


def validate_gate_set(circuit: Circuit) -> list[Violation]:
    """Check that ``circuit`` is built from the restricted gate set only.

    Returns an empty list when the circuit is valid. Every bias gate must share
    one angle; the first gate carrying a different angle is reported as
    ``"mixed bias angles"``.
    """
    violations = []
    theta = None
    for pos, gate in enumerate(circuit.gates):
        if not isinstance(gate, GATE_TYPES):
            violations.append(Violation(pos, f"{type(gate).__name__} is not in the gate set"))
            continue
        bad = [q for q in gate.qubits if q >= circuit.n_wires]
        if bad:
            violations.append(
                Violation(pos, f"qubit {bad[0]} outside circuit width {circuit.n_wires}")
            )
        if isinstance(gate, TwoLevelBias):
            if not 0.0 < gate.theta < math.pi / 2:
                violations.append(Violation(pos, f"bias angle {gate.theta} outside (0, pi/2)"))
            if theta is None:
                theta = gate.theta
            elif gate.theta != theta:
                violations.append(Violation(pos, "mixed bias angles"))
    return violations


# -- serialization ---------------------------------------------------------


def gate_to_dict(gate: Gate) -> dict:
    if isinstance(gate, Hadamard):
        return {"gate": "H", "target": gate.target}
    if isinstance(gate, Swap):
        return {"gate": "SWAP", "a": gate.a, "b": gate.b}
    if isinstance(gate, TwoLevelBias):
        return {
            "gate": "BIAS",
            "theta": gate.theta,
            "pair": gate.pair_index,
            "register": list(gate.register),
        }
    if isinstance(gate, ControlledTwoLevelX):
        return {
            "gate": "CX2L",
            "pair": gate.pair_index,
            "register": list(gate.register),
            "controls": [[c.qubit, c.positive] for c in gate.controls],
        }
    raise InvalidGateError(f"cannot serialize {gate!r}")


def gate_from_dict(d: dict) -> Gate:
    kind = d.get("gate")
    try:
        if kind == "H":
            return Hadamard(int(d["target"]))
        if kind == "SWAP":
            return Swap(int(d["a"]), int(d["b"]))
        if kind == "BIAS":
            return TwoLevelBias(float(d["theta"]), int(d["pair"]), tuple(d["register"]))
        if kind == "CX2L":
            return ControlledTwoLevelX(
                int(d["pair"]), tuple(d["register"]), tuple(d.get("controls", ()))
            )
    except KeyError as exc:
        raise InvalidGateError(f"gate {kind!r} missing field {exc}") from None
    raise InvalidGateError(f"unknown gate kind {kind!r}")


def circuit_to_dict(circuit: Circuit) -> dict:
    return {
        "n_register": circuit.n_register,
        "n_ancilla": circuit.n_ancilla,
        "gates": [gate_to_dict(g) for g in circuit.gates],
    }


def circuit_from_dict(d: dict) -> Circuit:
    return Circuit(
        int(d["n_register"]),
        int(d.get("n_ancilla", 0)),
        tuple(gate_from_dict(g) for g in d.get("gates", ())),
    )
