"""Truth tables of bijections on n-bit strings.

Line format, one entry per line, ``input:output``::

    11:00
    10:01
    01:10
    00:11

Line ``k`` (0-based) must carry the output whose binary value is ``k``.
"""
from __future__ import annotations

import re
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

from .errors import BijectivityError, OrderError, ShapeError, SyntaxTableError
from .statevector import bits_to_index, index_to_bits

_LINE = re.compile(r"([01]+):([01]+)")


@dataclass(frozen=True)
class TruthEntry:
    input: str
    output: str

    def __post_init__(self):
        if len(self.input) != len(self.output):
            raise ShapeError(f"entry {self.input}:{self.output} has unequal widths")


@dataclass(frozen=True)
class TruthTable:
    n: int
    entries: tuple[TruthEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        _validate(self.n, self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __call__(self, bits: str) -> str:
        return self.mapping()[bits]

    def mapping(self) -> dict[str, str]:
        return {e.input: e.output for e in self.entries}

    def to_lines(self) -> list[str]:
        return [f"{e.input}:{e.output}" for e in self.entries]

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> TruthTable:
        """Build the table of ``input k -> output perm[k]``."""
        size = len(perm)
        n = size.bit_length() - 1
        if n < 1 or size != 2**n:
            raise ShapeError(f"permutation length {size} is not a power of two >= 2")
        inverse = [None] * size
        for k, v in enumerate(perm):
            if not 0 <= v < size or inverse[v] is not None:
                raise BijectivityError(f"{list(perm)} is not a permutation")
            inverse[v] = k
        entries = [TruthEntry(index_to_bits(inverse[k], n), index_to_bits(k, n)) for k in range(size)]
        return cls(n, tuple(entries))

    @classmethod
    def from_function(cls, n: int, f: Callable[[str], str]) -> TruthTable:
        return cls.from_permutation(
            [bits_to_index(f(index_to_bits(k, n))) for k in range(2**n)]
        )


def _validate(n: int, entries: Sequence[TruthEntry]) -> None:
    if n < 1:
        raise ShapeError(f"bit width must be >= 1, got {n}")
    if len(entries) != 2**n:
        raise ShapeError(f"expected {2 ** n} entries for n={n}, got {len(entries)}")
    seen: dict[str, int] = {}
    for k, e in enumerate(entries):
        line = k + 1
        if len(e.input) != n or len(e.output) != n:
            raise ShapeError(f"entry {e.input}:{e.output} is not {n} bits wide", line)
        if bits_to_index(e.output) != k:
            raise OrderError(
                f"output {e.output} out of order; expected {index_to_bits(k, n)}", line
            )
        if e.input in seen:
            raise BijectivityError(
                f"input {e.input} repeats line {seen[e.input]}", line
            )
        seen[e.input] = line


def parse_truth_table(lines: Iterable[str]) -> TruthTable:
    """Parse ``input:output`` lines into a validated :class:`TruthTable`."""
    entries = []
    width = None
    for k, raw in enumerate(lines):
        line = k + 1
        text = raw.strip()
        m = _LINE.fullmatch(text)
        if m is None:
            raise SyntaxTableError(f"expected 'input:output' of 0/1 digits, got {raw!r}", line)
        inp, out = m.groups()
        if width is None:
            width = len(inp)
        if len(inp) != width or len(out) != width:
            raise ShapeError(f"{text!r} is not {width}:{width} bits wide", line)
        entries.append(TruthEntry(inp, out))
    if width is None:
        raise ShapeError("empty truth table")
    if len(entries) != 2**width:
        raise ShapeError(
            f"{len(entries)} lines given, but {width}-bit entries need {2 ** width}"
        )
    return TruthTable(width, tuple(entries))
