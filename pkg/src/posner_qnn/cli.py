"""Command-line driver.

Bare invocation reads a job from stdin::

    posner-qnn < func.txt

where ``func.txt`` holds the truth table (one ``input:output`` line per
entry), then an input bit string, then a mode line:

* ``A`` - amplitudes of the register just before measurement, ancillas set to
  the input line; one ``bits: re+imi`` line per basis state.
* ``P`` - the compiled circuit in text form (``--dot`` for Graphviz).
* ``S`` - ``--trials`` sampled outputs (default 100), one per line.

Every random draw derives from one master seed (``--seed``); trial ``t`` uses
child ``t`` of ``numpy.random.SeedSequence(seed)``. Without ``--seed`` a seed
is drawn from system entropy and reported on stderr.

Subcommands ``network eval|dist`` and ``posner react|joint|ent`` operate on
JSON description files. Errors exit with status 2.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .compiler import compile_circuit, output_distribution, run_trials, simulate
from .errors import PosnerError
from .gates import circuit_to_dict
from .network import loads_network, network_distribution, sample_network
from .posner import (
    JointPseudoSpinState,
    entanglement_measure,
    joint_probs,
    p_react,
)
from .render import render_circuit
from .statevector import index_to_bits, parse_bits
from .truth_table import parse_truth_table

MODES = ("A", "P", "S")
DEFAULT_TRIALS = 100


class JobError(Exception):
    """Bad job input; the message is printed and the process exits with 2."""


@dataclass
class JobSpec:
    table_lines: list[str]
    input: str
    mode: str
    trials: int = DEFAULT_TRIALS
    seed: int | None = None
    format: str = "plain"
    dot: bool = False


@dataclass
class JobResult:
    stdout: str
    stderr: str = ""
    code: int = 0


def stdin_driver(raw: str, **overrides) -> JobSpec:
    """Split stdin text into table lines, the input line and the mode line."""
    lines = raw.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < 3:
        raise JobError(
            f"expected a truth table, an input line and a mode line; got {len(lines)} line(s)"
        )
    return JobSpec(
        table_lines=lines[:-2],
        input=lines[-2].strip(),
        mode=lines[-1].strip(),
        **overrides,
    )


def _fmt_complex(z: complex) -> str:
    re = round(z.real, 6) + 0.0
    im = round(z.imag, 6) + 0.0
    return f"{re:.6f}{im:+.6f}i"


def _fresh_seed() -> int:
    return int(np.random.SeedSequence().entropy)


def run_job(spec: JobSpec) -> JobResult:
    """Execute a parsed job. Input problems come back as exit code 2."""
    try:
        return _run_job(spec)
    except (JobError, PosnerError) as exc:
        return JobResult("", f"error: {exc}\n", 2)


def _run_job(spec: JobSpec) -> JobResult:
    if spec.mode not in MODES:
        raise JobError(
            f"line {len(spec.table_lines) + 2}: unknown mode {spec.mode!r}; expected one of A, P, S"
        )
    if spec.trials < 1:
        raise JobError(f"trials must be >= 1, got {spec.trials}")
    tt = parse_truth_table(spec.table_lines)
    input_line = len(spec.table_lines) + 1
    try:
        parse_bits(spec.input)
    except ValueError as exc:
        raise JobError(f"line {input_line}: {exc}") from None
    if len(spec.input) != tt.n:
        raise JobError(
            f"line {input_line}: input {spec.input!r} has {len(spec.input)} bits, "
            f"table has {tt.n}"
        )
    circuit = compile_circuit(tt)

    if spec.mode == "P":
        text = render_circuit(circuit, "dot" if spec.dot else "text")
        if spec.format == "json":
            text = _dump({"mode": "P", "circuit": circuit_to_dict(circuit), "rendering": text})
        return JobResult(text)

    if spec.mode == "A":
        amps = simulate(circuit, spec.input).amplitudes
        if spec.format == "json":
            return JobResult(
                _dump(
                    {
                        "mode": "A",
                        "input": spec.input,
                        "amplitudes": {
                            index_to_bits(k, tt.n): [a.real, a.imag] for k, a in enumerate(amps)
                        },
                        "distribution": output_distribution(circuit, spec.input),
                    }
                )
            )
        lines = [f"{index_to_bits(k, tt.n)}: {_fmt_complex(a)}" for k, a in enumerate(amps)]
        return JobResult("\n".join(lines) + "\n")

    stderr = ""
    seed = spec.seed
    if seed is None:
        seed = _fresh_seed()
        stderr = f"seed: {seed}\n"
    samples = run_trials(circuit, spec.input, spec.trials, seed)
    if spec.format == "json":
        counts = Counter(samples)
        return JobResult(
            _dump(
                {
                    "mode": "S",
                    "input": spec.input,
                    "seed": seed,
                    "trials": spec.trials,
                    "samples": samples,
                    "counts": dict(sorted(counts.items())),
                    "distribution": output_distribution(circuit, spec.input),
                }
            ),
            stderr,
        )
    return JobResult("\n".join(samples) + "\n", stderr)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- subcommands -----------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise JobError(f"cannot read {path}: {exc.strerror}") from None


def _load_state(path: str) -> JointPseudoSpinState:
    try:
        data = json.loads(_read(path))
        if isinstance(data, dict):
            data = data["coefficients"]
        return JointPseudoSpinState.from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise JobError(f"{path}: malformed coefficient matrix ({exc})") from None


def _network_cmd(args) -> JobResult:
    try:
        net = loads_network(_read(args.file))
    except json.JSONDecodeError as exc:
        raise JobError(f"{args.file}: {exc}") from None
    if args.action == "dist":
        dist = network_distribution(net, args.input)
        if args.format == "json":
            return JobResult(_dump({"input": args.input, "distribution": dist}))
        return JobResult("".join(f"{k}: {v:.12g}\n" for k, v in dist.items()))

    stderr = ""
    seed = args.seed
    if seed is None:
        seed = _fresh_seed()
        stderr = f"seed: {seed}\n"
    samples = sample_network(net, args.input, args.trials, seed)
    if args.format == "json":
        return JobResult(
            _dump(
                {
                    "input": args.input,
                    "seed": seed,
                    "trials": args.trials,
                    "samples": samples,
                    "counts": dict(sorted(Counter(samples).items())),
                }
            ),
            stderr,
        )
    return JobResult("\n".join(samples) + "\n", stderr)


def _posner_cmd(args) -> JobResult:
    states = [_load_state(p) for p in args.files]
    if args.action == "react":
        if len(states) != 1:
            raise JobError("posner react takes exactly one state file")
        value = p_react(states[0])
        payload = {"p_react": value}
        text = f"{value:.12g}\n"
    else:
        if len(states) != 2:
            raise JobError(f"posner {args.action} takes two state files")
        dist = joint_probs(*states)
        p11, p10, p01, p00 = dist.as_tuple()
        payload = {"P11": p11, "P10": p10, "P01": p01, "P00": p00}
        if args.action == "ent":
            payload = {"entanglement": entanglement_measure(dist)}
        text = "".join(f"{k}: {v:.12g}\n" for k, v in payload.items())
    if args.format == "json":
        text = _dump(payload)
    return JobResult(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("plain", "json"), default="plain")

    parser = argparse.ArgumentParser(
        prog="posner-qnn",
        parents=[common],
        description="Compile and simulate truth-table circuits read from stdin.",
    )
    parser.add_argument("--dot", action="store_true", help="mode P: emit Graphviz instead of text")
    sub = parser.add_subparsers(dest="command")

    net = sub.add_parser("network", parents=[common], help="evaluate a network description file")
    net.add_argument("action", choices=("eval", "dist"))
    net.add_argument("file")
    net.add_argument("--input", required=True)

    pos = sub.add_parser("posner", help="pseudo-spin binding statistics")
    pos.add_argument("action", choices=("react", "joint", "ent"))
    pos.add_argument("files", nargs="+")
    pos.add_argument("--format", choices=("plain", "json"), default="plain")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "network":
            result = _network_cmd(args)
        elif args.command == "posner":
            result = _posner_cmd(args)
        else:
            spec = stdin_driver(
                sys.stdin.read(),
                trials=args.trials,
                seed=args.seed,
                format=args.format,
                dot=args.dot,
            )
            result = run_job(spec)
    except (JobError, PosnerError) as exc:
        result = JobResult("", f"error: {exc}\n", 2)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
