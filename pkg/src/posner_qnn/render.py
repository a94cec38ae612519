"""Plain-text and Graphviz renderings of circuits.

Text format: two header lines naming the register and ancilla wires, then one
line per gate in circuit order::

    register: q0 q1
    ancilla: q2 q3
    H q0
    BIAS(0.785398163397) q0 q1 [0,3]
    CX2L q0 q1 [0,1] ctrl +q2 -q3
    SWAP q0 q1

``[0,i]`` names the basis pair a two-level gate acts on; ``+q``/``-q`` mark
controls that fire on 1/0.
"""
from __future__ import annotations

from .errors import UsageError
from .gates import Circuit, ControlledTwoLevelX, Gate, Hadamard, Swap, TwoLevelBias

FORMATS = ("text", "dot")


def _wires(qubits) -> str:
    return " ".join(f"q{q}" for q in qubits)


def gate_label(gate: Gate) -> str:
    if isinstance(gate, Hadamard):
        return f"H q{gate.target}"
    if isinstance(gate, Swap):
        return f"SWAP q{gate.a} q{gate.b}"
    if isinstance(gate, TwoLevelBias):
        return f"BIAS({gate.theta:.12g}) {_wires(gate.register)} [0,{gate.pair_index}]"
    if isinstance(gate, ControlledTwoLevelX):
        label = f"CX2L {_wires(gate.register)} [0,{gate.pair_index}]"
        if gate.controls:
            ctrl = " ".join(f"{'+' if c.positive else '-'}q{c.qubit}" for c in gate.controls)
            label += f" ctrl {ctrl}"
        return label
    raise UsageError(f"cannot render {type(gate).__name__}")


def render_text(circuit: Circuit) -> str:
    lines = [
        f"register: {_wires(circuit.register_wires)}",
        f"ancilla: {_wires(circuit.ancilla_wires)}".rstrip(),
    ]
    lines += [gate_label(g) for g in circuit.gates]
    return "\n".join(lines) + "\n"


def render_dot(circuit: Circuit) -> str:
    """Gates become nodes; an edge labelled ``qN`` joins consecutive gates on wire N."""
    out = ["digraph circuit {", "  rankdir=LR;", "  node [shape=box];"]
    for k, gate in enumerate(circuit.gates):
        out.append(f'  g{k} [label="{gate_label(gate)}"];')
    last: dict[int, int] = {}
    for k, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            if q in last:
                out.append(f'  g{last[q]} -> g{k} [label="q{q}"];')
            last[q] = k
    out.append("}")
    return "\n".join(out) + "\n"


def render_circuit(circuit: Circuit, format: str = "text") -> str:
    if format == "text":
        return render_text(circuit)
    if format == "dot":
        return render_dot(circuit)
    raise UsageError(f"unknown render format {format!r}; choose from {FORMATS}")
