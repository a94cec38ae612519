"""Truth-table circuits over a restricted gate set, SPN networks, and pseudo-spin binding statistics."""
from .compiler import (
    compile_circuit,
    evaluate,
    output_distribution,
    run_trials,
    simulate,
    simulate_full,
)
from .errors import (
    BijectivityError,
    ConfigurationError,
    InvalidGateError,
    NormalizationError,
    OrderError,
    PosnerError,
    RangeError,
    ResourceError,
    ShapeError,
    SyntaxTableError,
    TruthTableError,
    UsageError,
    WiringError,
)
from .gates import (
    Circuit,
    Control,
    ControlledTwoLevelX,
    Hadamard,
    Swap,
    TwoLevelBias,
    bias_matrix,
    decompose_bias,
    validate_gate_set,
)
from .network import (
    ClassicalUnit,
    Layer,
    Network,
    QuantumBlock,
    UnitRef,
    eval_classical_unit,
    eval_network,
    network_distribution,
    validate_network,
)
from .posner import (
    BindingDistribution,
    JointPseudoSpinState,
    entanglement_measure,
    joint_probs,
    p_react,
)
from .render import render_circuit
from .statevector import (
    StateVector,
    apply_gate,
    init_basis,
    measure_all,
    probability_of,
)
from .theta import ThetaPolicy, check_eq3, divisor, eq3_lhs
from .truth_table import TruthEntry, TruthTable, parse_truth_table

__version__ = "0.1.0"
