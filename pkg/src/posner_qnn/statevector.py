"""Dense statevector simulation of the restricted gate set.

Amplitudes live in a contiguous ``complex128`` array of length ``2**n``. Qubit 0
is the most significant bit of the basis index, so the text string ``"10"``
names index 2.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .errors import InvalidGateError, NormalizationError, RangeError
from .gates import (
    ControlledTwoLevelX,
    Control,
    Gate,
    H_MATRIX,
    Hadamard,
    Swap,
    TwoLevelBias,
    is_unitary,
)

NORM_TOL = 1e-9


# -- bit strings -----------------------------------------------------------


def parse_bits(text: str) -> tuple[bool, ...]:
    """Convert a string of ``0``/``1`` characters to a tuple of booleans."""
    bits = []
    for ch in text:
        if ch == "1":
            bits.append(True)
        elif ch == "0":
            bits.append(False)
        else:
            raise ValueError(f"invalid bit character {ch!r} in {text!r}")
    return tuple(bits)


def format_bits(bits: Iterable[bool]) -> str:
    return "".join("1" if b else "0" for b in bits)


def bits_to_index(bits: str | Sequence[bool]) -> int:
    if isinstance(bits, str):
        bits = parse_bits(bits)
    k = 0
    for b in bits:
        k = (k << 1) | int(bool(b))
    return k


def index_to_bits(index: int, width: int) -> str:
    if not 0 <= index < 2**width:
        raise RangeError(f"index {index} does not fit in {width} bits")
    return format(index, f"0{width}b") if width else ""


# -- state -----------------------------------------------------------------


class StateVector:
    """An ``n_qubits`` register held as a dense amplitude array."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes, n_qubits: int | None = None):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if n_qubits is None:
            n_qubits = int(amps.size).bit_length() - 1
        if n_qubits < 1 or amps.size != 2**n_qubits:
            raise RangeError(f"{amps.size} amplitudes do not describe a register of n >= 1 qubits")
        self.n_qubits = n_qubits
        self.amplitudes = amps

    def __len__(self) -> int:
        return self.amplitudes.size

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy(), self.n_qubits)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def apply(self, gate: Gate) -> StateVector:
        """Apply ``gate`` in place and return ``self``."""
        _apply(self, gate)
        return self


def init_basis(n_qubits: int, index: int | str) -> StateVector:
    """Return the computational basis state ``|index>`` on ``n_qubits`` qubits."""
    if n_qubits < 1:
        raise RangeError(f"need at least one qubit, got {n_qubits}")
    if isinstance(index, str):
        if len(index) != n_qubits:
            raise RangeError(f"bit string {index!r} does not have {n_qubits} bits")
        index = bits_to_index(index)
    if not 0 <= index < 2**n_qubits:
        raise RangeError(f"basis index {index} outside [0, {2 ** n_qubits})")
    amps = np.zeros(2**n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps, n_qubits)


def apply_gate(state: StateVector, gate: Gate, *, inplace: bool = False) -> StateVector:
    """Apply ``gate`` to ``state``; a new state is returned unless ``inplace``."""
    target = state if inplace else state.copy()
    _apply(target, gate)
    return target


def _weight(n: int, q: int) -> int:
    return 1 << (n - 1 - q)


def _check_qubits(n: int, qubits: Iterable[int]) -> None:
    for q in qubits:
        if not 0 <= q < n:
            raise RangeError(f"qubit {q} outside a {n}-qubit register")


def _apply(state: StateVector, gate: Gate) -> None:
    n = state.n_qubits
    if isinstance(gate, Hadamard):
        _check_qubits(n, gate.qubits)
        _apply_single(state.amplitudes, H_MATRIX, gate.target, n)
    elif isinstance(gate, Swap):
        _check_qubits(n, gate.qubits)
        _apply_swap(state.amplitudes, gate.a, gate.b, n)
    elif isinstance(gate, (TwoLevelBias, ControlledTwoLevelX)):
        apply_two_level(
            state, gate.matrix(), gate.pair_index, gate.register, gate.controls
        )
    else:
        raise InvalidGateError(f"{type(gate).__name__} is not in the gate set")


def _apply_single(amps: np.ndarray, matrix: np.ndarray, q: int, n: int) -> None:
    view = amps.reshape(2**q, 2, 2 ** (n - q - 1))
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = matrix[0, 0] * a0 + matrix[0, 1] * a1
    view[:, 1, :] = matrix[1, 0] * a0 + matrix[1, 1] * a1


def _apply_swap(amps: np.ndarray, a: int, b: int, n: int) -> None:
    t = amps.reshape((2,) * n)
    amps[:] = np.swapaxes(t, a, b).reshape(-1)


def apply_two_level(
    state: StateVector,
    matrix: np.ndarray,
    pair_index: int,
    register: Sequence[int],
    controls: Sequence[Control] = (),
) -> None:
    """Mix amplitudes of register values ``0`` and ``pair_index`` in place.

    For every assignment of the remaining qubits that satisfies all controls,
    the amplitude pair ``(a0, ai)`` becomes ``matrix @ (a0, ai)``. Amplitudes
    outside those pairs are not touched.
    """
    n = state.n_qubits
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (2, 2) or not is_unitary(m):
        raise InvalidGateError("two-level matrix must be a 2x2 unitary")
    register = tuple(register)
    ctrl_qubits = [c.qubit for c in controls]
    _check_qubits(n, register)
    _check_qubits(n, ctrl_qubits)
    if not 1 <= pair_index < 2 ** len(register):
        raise RangeError(f"pair index {pair_index} outside [1, {2 ** len(register)})")

    base = 0
    for c in controls:
        if c.positive:
            base |= _weight(n, c.qubit)
    used = set(register) | set(ctrl_qubits)
    free = [q for q in range(n) if q not in used]
    offsets = np.zeros(1, dtype=np.int64)
    for q in free:
        offsets = np.concatenate([offsets, offsets + _weight(n, q)])
    idx0 = base + offsets

    shift = 0
    width = len(register)
    for r, q in enumerate(register):
        if (pair_index >> (width - 1 - r)) & 1:
            shift |= _weight(n, q)
    idx1 = idx0 + shift

    amps = state.amplitudes
    a0 = amps[idx0]
    a1 = amps[idx1]
    amps[idx0] = m[0, 0] * a0 + m[0, 1] * a1
    amps[idx1] = m[1, 0] * a0 + m[1, 1] * a1


# -- measurement -----------------------------------------------------------


def probability_of(state: StateVector, index: int | str) -> float:
    if isinstance(index, str):
        index = bits_to_index(index)
    if not 0 <= index < len(state):
        raise RangeError(f"basis index {index} outside [0, {len(state)})")
    return float(abs(state.amplitudes[index]) ** 2)


def check_normalized(state: StateVector, tol: float = NORM_TOL) -> None:
    total = float(state.probabilities().sum())
    if abs(total - 1.0) > tol:
        raise NormalizationError(f"state has squared norm {total!r}")


def sample_index(probs: np.ndarray, rng: np.random.Generator) -> int:
    """Draw one index from ``probs`` with a single uniform variate."""
    cdf = np.cumsum(probs)
    u = rng.random() * cdf[-1]
    k = int(np.searchsorted(cdf, u, side="right"))
    # guard the u == cdf[-1] edge and trailing zero-probability entries
    k = min(k, len(probs) - 1)
    while probs[k] == 0.0 and k > 0:
        k -= 1
    return k


def measure_all(state: StateVector, rng: np.random.Generator) -> str:
    """Projectively measure every qubit; return the outcome as a bit string."""
    check_normalized(state)
    k = sample_index(state.probabilities(), rng)
    return index_to_bits(k, state.n_qubits)


def distribution(state: StateVector, *, drop_zeros: bool = False) -> dict[str, float]:
    """Born-rule outcome probabilities keyed by bit string, in index order."""
    probs = state.probabilities()
    return {
        index_to_bits(k, state.n_qubits): float(p)
        for k, p in enumerate(probs)
        if not (drop_zeros and p == 0.0)
    }
