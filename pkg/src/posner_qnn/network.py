"""Layered hard-threshold networks with quantum blocks (SPN networks).

Layer 0 holds the input bits. Every later layer is partitioned among
*classical units* (one unit each, value ``1 if sum(w*v) + d >= 0 else 0``) and
*quantum blocks*. A block owns ``p`` units of its layer and is wired to ``p``
distinct units of the previous layer with unit weight. Its circuit runs on the
basis state given by those source values and is measured once; wire ``r``
feeds qubit ``r`` and bit ``r`` of the outcome becomes ``units[r]``.

A block whose circuit carries ancillas (e.g. a compiled truth-table circuit)
loads the source bits into the ancillas and measures the register, so the
circuit needs ``n_register == n_ancilla == p``.

Network description files are JSON::

    {"input_width": 1,
     "layers": [
       {"width": 1, "elements": [
         {"type": "quantum", "units": [0], "wiring": [[0, 0]],
          "circuit": {"n_register": 1, "n_ancilla": 0,
                      "gates": [{"gate": "H", "target": 0}]}}]},
       {"width": 1, "elements": [
         {"type": "classical", "unit": 0, "offset": -1.0,
          "inputs": [{"source": [1, 0], "weight": 1.0}]}]}]}

Sources are ``[layer, unit]`` pairs.
"""
from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from .compiler import output_distribution, simulate, spawn_rngs
from .errors import ConfigurationError, ResourceError, WiringError
from .gates import Circuit, circuit_from_dict, circuit_to_dict, validate_gate_set
from .statevector import measure_all, parse_bits

DEFAULT_BRANCH_CAP = 2**20


class UnitRef(NamedTuple):
    layer: int
    unit: int


def _ref(x) -> UnitRef:
    layer, unit = x
    return UnitRef(int(layer), int(unit))


@dataclass(frozen=True)
class ClassicalUnit:
    unit: int
    inputs: tuple[tuple[UnitRef, float], ...]
    offset: float = 0.0

    def __post_init__(self):
        object.__setattr__(
            self, "inputs", tuple((_ref(src), float(w)) for src, w in self.inputs)
        )

    @property
    def units(self) -> tuple[int, ...]:
        return (self.unit,)

    @property
    def sources(self) -> tuple[UnitRef, ...]:
        return tuple(src for src, _ in self.inputs)


@dataclass(frozen=True)
class QuantumBlock:
    units: tuple[int, ...]
    wiring: tuple[UnitRef, ...]
    circuit: Circuit

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(int(u) for u in self.units))
        object.__setattr__(self, "wiring", tuple(_ref(w) for w in self.wiring))

    @property
    def width(self) -> int:
        return len(self.units)

    @property
    def sources(self) -> tuple[UnitRef, ...]:
        return self.wiring


Element = Union[ClassicalUnit, QuantumBlock]


@dataclass(frozen=True)
class Layer:
    width: int
    elements: tuple[Element, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))


@dataclass(frozen=True)
class Network:
    input_width: int
    layers: tuple[Layer, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @property
    def output_width(self) -> int:
        return self.layers[-1].width if self.layers else self.input_width

    def width_of(self, layer: int) -> int:
        return self.input_width if layer == 0 else self.layers[layer - 1].width


# -- validation ------------------------------------------------------------


def validate_network(net: Network) -> list[str]:
    """Return every structural violation found; empty means valid."""
    problems = []
    if net.input_width < 1:
        problems.append(f"input width {net.input_width} < 1")
    for j, layer in enumerate(net.layers, start=1):
        prev_width = net.width_of(j - 1)
        owners: dict[int, int] = {}
        for e_pos, elem in enumerate(layer.elements):
            where = f"layer {j} element {e_pos}"
            if not isinstance(elem, (ClassicalUnit, QuantumBlock)):
                problems.append(f"{where}: unknown element {type(elem).__name__}")
                continue
            for u in elem.units:
                if not 0 <= u < layer.width:
                    problems.append(f"{where}: unit {u} outside layer width {layer.width}")
                elif u in owners:
                    problems.append(f"{where}: unit {u} already owned by element {owners[u]}")
                else:
                    owners[u] = e_pos
            for src in elem.sources:
                if src.layer != j - 1:
                    problems.append(
                        f"{where}: edge from layer {src.layer} does not come from layer {j - 1}"
                    )
                elif not 0 <= src.unit < prev_width:
                    problems.append(f"{where}: source unit {src.unit} outside layer {j - 1}")
            if isinstance(elem, ClassicalUnit):
                if not elem.inputs:
                    problems.append(f"{where}: classical unit has no incoming edge")
            else:
                problems.extend(f"{where}: {p}" for p in _block_problems(elem))
        missing = sorted(set(range(layer.width)) - set(owners))
        if missing:
            problems.append(f"layer {j}: units {missing} have no owner")
    return problems


def _block_problems(block: QuantumBlock) -> list[str]:
    out = []
    p = block.width
    if p < 1:
        out.append("quantum block owns no units")
    if len(block.wiring) != p:
        out.append(f"{len(block.wiring)} wires for {p} block units")
    if len(set(block.wiring)) != len(block.wiring):
        out.append("two block qubits wired to the same source unit")
    c = block.circuit
    if c.n_register != p or c.n_ancilla not in (0, p):
        out.append(
            f"circuit widths ({c.n_register}, {c.n_ancilla}) do not fit a {p}-unit block"
        )
    out.extend(f"circuit {v}" for v in validate_gate_set(c))
    return out


def _require_valid(net: Network, bits: str) -> tuple[bool, ...]:
    problems = validate_network(net)
    if problems:
        raise ConfigurationError("invalid network: " + "; ".join(problems))
    try:
        values = parse_bits(bits)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None
    if len(values) != net.input_width:
        raise ConfigurationError(
            f"input {bits!r} has {len(values)} bits, network expects {net.input_width}"
        )
    return values


# -- evaluation ------------------------------------------------------------


def eval_classical_unit(unit: ClassicalUnit, values: Sequence[int] | dict) -> int:
    """Hard threshold: 1 when the weighted sum plus offset is >= 0.

    ``values`` is either the previous layer's bits indexed by unit, or a mapping
    keyed by :class:`UnitRef`.
    """
    total = unit.offset
    for src, w in unit.inputs:
        try:
            v = values[src] if isinstance(values, dict) else values[src.unit]
        except (KeyError, IndexError):
            raise WiringError(f"source {tuple(src)} has no value") from None
        total += w * int(v)
    return 1 if total >= 0 else 0


def _block_input(block: QuantumBlock, prev: Sequence[int]) -> str:
    return "".join(str(int(prev[w.unit])) for w in block.wiring)


def _block_distribution(block: QuantumBlock, prev: Sequence[int]) -> dict[str, float]:
    return output_distribution(block.circuit, _block_input(block, prev))


def _classical_values(layer: Layer, prev: Sequence[int], out: list[int]) -> None:
    for elem in layer.elements:
        if isinstance(elem, ClassicalUnit):
            out[elem.unit] = eval_classical_unit(elem, prev)


def _blocks(layer: Layer) -> list[QuantumBlock]:
    return [e for e in layer.elements if isinstance(e, QuantumBlock)]


def eval_network(net: Network, bits: str, rng: np.random.Generator) -> str:
    """One stochastic pass; every block is measured once."""
    prev = [int(b) for b in _require_valid(net, bits)]
    for layer in net.layers:
        cur = [0] * layer.width
        _classical_values(layer, prev, cur)
        for block in _blocks(layer):
            outcome = measure_all(simulate(block.circuit, _block_input(block, prev)), rng)
            for unit, ch in zip(block.units, outcome):
                cur[unit] = int(ch)
        prev = cur
    return "".join(map(str, prev))


def network_distribution(
    net: Network, bits: str, *, cap: int = DEFAULT_BRANCH_CAP
) -> dict[str, float]:
    """Exact output distribution by depth-first enumeration of measurement branches.

    Zero-probability branches are pruned. Raises :class:`ResourceError` once
    more than ``cap`` leaves would be visited.
    """
    start = [int(b) for b in _require_valid(net, bits)]
    result: dict[str, float] = {}
    leaves = 0

    def layer_branches(layer: Layer, prev: list[int]):
        base = [0] * layer.width
        _classical_values(layer, prev, base)
        branches = [(base, 1.0)]
        for block in _blocks(layer):
            dist = _block_distribution(block, prev)
            grown = []
            for values, weight in branches:
                for outcome, p in dist.items():
                    if p == 0.0:
                        continue
                    nxt = list(values)
                    for unit, ch in zip(block.units, outcome):
                        nxt[unit] = int(ch)
                    grown.append((nxt, weight * p))
            branches = grown
        return branches

    def descend(depth: int, prev: list[int], weight: float) -> None:
        nonlocal leaves
        if depth == len(net.layers):
            leaves += 1
            if leaves > cap:
                raise ResourceError(f"branch enumeration exceeded cap of {cap} leaves")
            key = "".join(map(str, prev))
            result[key] = result.get(key, 0.0) + weight
            return
        for values, p in layer_branches(net.layers[depth], prev):
            descend(depth + 1, values, weight * p)

    descend(0, start, 1.0)
    return dict(sorted(result.items()))


def sample_network(net: Network, bits: str, trials: int, seed: int | None) -> list[str]:
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")
    return [eval_network(net, bits, rng) for rng in spawn_rngs(seed, trials)]


# -- (de)serialization -----------------------------------------------------


def _element_to_dict(elem: Element) -> dict:
    if isinstance(elem, ClassicalUnit):
        return {
            "type": "classical",
            "unit": elem.unit,
            "offset": elem.offset,
            "inputs": [{"source": list(src), "weight": w} for src, w in elem.inputs],
        }
    return {
        "type": "quantum",
        "units": list(elem.units),
        "wiring": [list(w) for w in elem.wiring],
        "circuit": circuit_to_dict(elem.circuit),
    }


def _element_from_dict(d: dict) -> Element:
    kind = d.get("type")
    try:
        if kind == "classical":
            return ClassicalUnit(
                int(d["unit"]),
                tuple((i["source"], i["weight"]) for i in d["inputs"]),
                float(d.get("offset", 0.0)),
            )
        if kind == "quantum":
            return QuantumBlock(d["units"], d["wiring"], circuit_from_dict(d["circuit"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed {kind} element: {exc}") from None
    raise ConfigurationError(f"unknown element type {kind!r}")


def network_to_dict(net: Network) -> dict:
    return {
        "input_width": net.input_width,
        "layers": [
            {"width": layer.width, "elements": [_element_to_dict(e) for e in layer.elements]}
            for layer in net.layers
        ],
    }


def network_from_dict(d: dict) -> Network:
    try:
        layers = tuple(
            Layer(int(layer["width"]), tuple(_element_from_dict(e) for e in layer["elements"]))
            for layer in d["layers"]
        )
        return Network(int(d["input_width"]), layers)
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed network description: {exc}") from None


def dumps_network(net: Network) -> str:
    return json.dumps(network_to_dict(net), indent=2, sort_keys=True) + "\n"


def loads_network(text: str) -> Network:
    return network_from_dict(json.loads(text))
