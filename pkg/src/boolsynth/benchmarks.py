"""Problem instances: full truth tables for the standard benchmark families.

A problem fixes an arity v, one target bit per row of the complete
2^v-row truth table, and the v input-argument columns.  Rows are indexed
so that argument A(k+1) is bit k of the row index (A1 least significant).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .semantics import BitArray

MAX_ARITY = 24  # practical cap: 2^24 fitness cases


class BenchmarkKind(enum.Enum):
    COMPARATOR = "cmp"
    MAJORITY = "maj"
    MULTIPLEXER = "mux"
    PARITY = "par"


#: CLI names of the standard benchmark grid, in reporting order.
BENCHMARKS: dict[str, tuple[BenchmarkKind, int]] = {
    "cmp6": (BenchmarkKind.COMPARATOR, 6),
    "cmp8": (BenchmarkKind.COMPARATOR, 8),
    "maj6": (BenchmarkKind.MAJORITY, 6),
    "maj8": (BenchmarkKind.MAJORITY, 8),
    "mux6": (BenchmarkKind.MULTIPLEXER, 6),
    "mux11": (BenchmarkKind.MULTIPLEXER, 11),
    "par6": (BenchmarkKind.PARITY, 6),
    "par8": (BenchmarkKind.PARITY, 8),
    "par9": (BenchmarkKind.PARITY, 9),
    "par10": (BenchmarkKind.PARITY, 10),
}


@dataclass(frozen=True)
class TruthTable:
    """One problem: arity, target column, and the input-argument columns."""

    v: int
    targets: BitArray
    args: tuple[BitArray, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.v <= MAX_ARITY:
            raise ValueError(f"arity {self.v} out of range 1..{MAX_ARITY}")
        rows = 1 << self.v
        if self.targets.n != rows:
            raise ValueError(f"targets length {self.targets.n} != 2^{self.v}")
        if tuple(gen_arguments(self.v)) != self.args:
            raise ValueError("argument columns must follow the row-index convention")

    @property
    def num_cases(self) -> int:
        return 1 << self.v


def gen_arguments(v: int) -> list[BitArray]:
    """The v argument columns over all 2^v rows: args[k][i] = (i >> k) & 1."""
    if not 1 <= v <= MAX_ARITY:
        raise ValueError(f"arity {v} out of range 1..{MAX_ARITY}")
    rows = 1 << v
    out = []
    for k in range(v):
        period = 1 << (k + 1)
        # one period: 2^k zeros then 2^k ones, replicated by doubling
        column = ((1 << (1 << k)) - 1) << (1 << k)
        width = period
        while width < rows:
            column |= column << width
            width <<= 1
        out.append(BitArray(rows, column))
    return out


def gen_benchmark(kind: BenchmarkKind, v: int) -> TruthTable:
    """Build the full truth table of one benchmark family member.

    Conventions: the comparator's low number is A1..A(v/2) and its high
    number A(v/2+1)..Av, each with the lowest-index argument as least
    significant bit; the multiplexer's address is A1..Ak (A1 least
    significant) selecting among the data arguments A(k+1)..Av; majority
    is strictly more than half; parity is true for an odd number of
    true inputs.
    """
    if not 1 <= v <= MAX_ARITY:
        raise ValueError(f"arity {v} out of range 1..{MAX_ARITY}")
    rows = 1 << v
    bits = 0
    if kind is BenchmarkKind.COMPARATOR:
        if v < 2 or v % 2:
            raise ValueError(f"comparator needs an even arity >= 2, got {v}")
        half = v // 2
        low_mask = (1 << half) - 1
        for i in range(rows):
            if (i & low_mask) < (i >> half):
                bits |= 1 << i
    elif kind is BenchmarkKind.MAJORITY:
        if v < 2:
            raise ValueError(f"majority needs arity >= 2, got {v}")
        for i in range(rows):
            if 2 * i.bit_count() > v:
                bits |= 1 << i
    elif kind is BenchmarkKind.MULTIPLEXER:
        k = _mux_address_width(v)
        addr_mask = (1 << k) - 1
        for i in range(rows):
            if (i >> (k + (i & addr_mask))) & 1:
                bits |= 1 << i
    elif kind is BenchmarkKind.PARITY:
        if v < 2:
            raise ValueError(f"parity needs arity >= 2, got {v}")
        for i in range(rows):
            if i.bit_count() & 1:
                bits |= 1 << i
    else:
        raise ValueError(f"unknown benchmark kind {kind!r}")
    return TruthTable(v, BitArray(rows, bits), tuple(gen_arguments(v)))


def _mux_address_width(v: int) -> int:
    k = 1
    while k + (1 << k) < v:
        k += 1
    if k + (1 << k) != v:
        raise ValueError(f"multiplexer arity must be k + 2^k for some k >= 1, got {v}")
    return k


def benchmark_by_name(name: str) -> TruthTable:
    """Resolve one of the standard CLI names (cmp6, ..., par10)."""
    try:
        kind, v = BENCHMARKS[name]
    except KeyError:
        raise ValueError(
            f"unknown benchmark {name!r}; expected one of {', '.join(BENCHMARKS)}"
        ) from None
    return gen_benchmark(kind, v)


_HEADER_RE = re.compile(r"^v=(\d+)$")


def parse_problem(text: str) -> TruthTable:
    """Read a custom problem: line 1 ``v=<arity>``, line 2 the target bits.

    The target string has 2^v characters over {0,1}, row i's target at
    position i.
    """
    lines = [line.strip() for line in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise ValueError("empty problem: missing 'v=<arity>' header")
    header = _HEADER_RE.match(lines[0])
    if header is None:
        raise ValueError(f"bad header {lines[0]!r}: expected 'v=<arity>'")
    v = int(header.group(1))
    if not 1 <= v <= MAX_ARITY:
        raise ValueError(f"arity {v} out of range 1..{MAX_ARITY}")
    if len(lines) < 2:
        raise ValueError("missing target line after the header")
    if len(lines) > 2:
        raise ValueError(f"expected 2 lines, got {len(lines)}")
    target_text = lines[1]
    if len(target_text) != 1 << v:
        raise ValueError(
            f"target line has {len(target_text)} characters, expected 2^{v}={1 << v}"
        )
    targets = BitArray.from_string(target_text)
    return TruthTable(v, targets, tuple(gen_arguments(v)))
