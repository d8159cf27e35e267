"""Three-valued output arrays and the reversible Boolean operator set.

An output array records one symbol per fitness case: 0, 1, or ``#``
(don't-care).  Arrays are immutable and bit-packed into two integer
planes (a value plane and a don't-care plane), so whole-array operators
are single big-int expressions regardless of the number of cases.
The packing is internal; the public surface speaks loci and symbols.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator


class DimensionError(ValueError):
    """Arrays whose lengths must agree did not."""


class InvalidSwapError(ValueError):
    """A don't-care swap was requested at a locus that cannot host one."""


class TriValue(enum.Enum):
    """One locus symbol: concrete 0/1 or the ``#`` don't-care."""

    ZERO = 0
    ONE = 1
    HASH = 2

    def __str__(self) -> str:
        return "01#"[self.value]


class BoolOp(enum.IntEnum):
    """The four operators; enum order is the fixed ranking tie-break order."""

    AND = 0
    OR = 1
    NAND = 2
    NOR = 3


@dataclass(frozen=True)
class BitArray:
    """Concrete 0/1 outputs; bit i of ``bits`` is the value for case i."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one locus, got n={self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError("value plane overflows the declared length")

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "BitArray":
        vals = list(values)
        bits = 0
        for i, v in enumerate(vals):
            if v not in (0, 1):
                raise ValueError(f"locus {i}: expected 0 or 1, got {v!r}")
            bits |= v << i
        return cls(len(vals), bits)

    @classmethod
    def from_string(cls, text: str) -> "BitArray":
        return cls.from_values(_digit(ch, "01") for ch in text)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, locus: int) -> int:
        _check_locus(locus, self.n)
        return (self.bits >> locus) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.n))

    def __str__(self) -> str:
        # locus 0 printed first
        return "".join(str(v) for v in self)

    def popcount(self) -> int:
        return self.bits.bit_count()

    def to_tri(self) -> "TriArray":
        return TriArray(self.n, self.bits, 0)


@dataclass(frozen=True)
class TriArray:
    """Three-valued outputs over ``n`` cases.

    ``bits`` is the value plane and ``hashes`` the don't-care plane; the
    value plane is kept zero at don't-care loci so equality of planes is
    exact three-valued equality.
    """

    n: int
    bits: int = 0
    hashes: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one locus, got n={self.n}")
        top = 1 << self.n
        if not (0 <= self.bits < top and 0 <= self.hashes < top):
            raise ValueError("plane overflows the declared length")
        if self.bits & self.hashes:
            raise ValueError("value plane must be zero at don't-care loci")

    @classmethod
    def from_values(cls, values: Iterable[TriValue]) -> "TriArray":
        bits = hashes = 0
        count = 0
        for i, v in enumerate(values):
            if v is TriValue.ONE:
                bits |= 1 << i
            elif v is TriValue.HASH:
                hashes |= 1 << i
            elif v is not TriValue.ZERO:
                raise ValueError(f"locus {i}: expected a TriValue, got {v!r}")
            count = i + 1
        return cls(count, bits, hashes)

    @classmethod
    def from_string(cls, text: str) -> "TriArray":
        bits = hashes = 0
        for i, ch in enumerate(text):
            d = _digit(ch, "01#")
            if d == 1:
                bits |= 1 << i
            elif d == 2:
                hashes |= 1 << i
        return cls(len(text), bits, hashes)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, locus: int) -> TriValue:
        _check_locus(locus, self.n)
        if (self.hashes >> locus) & 1:
            return TriValue.HASH
        return TriValue.ONE if (self.bits >> locus) & 1 else TriValue.ZERO

    def __iter__(self) -> Iterator[TriValue]:
        return (self[i] for i in range(self.n))

    def __str__(self) -> str:
        # locus 0 printed first
        return "".join(str(v) for v in self)

    def hash_count(self) -> int:
        return self.hashes.bit_count()

    @property
    def is_concrete(self) -> bool:
        return self.hashes == 0


@dataclass(frozen=True)
class FlexMask:
    """Loci where a reverse operator offered a choice of ``#`` placement."""

    n: int
    flags: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one locus, got n={self.n}")
        if not 0 <= self.flags < (1 << self.n):
            raise ValueError("flag plane overflows the declared length")

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, locus: int) -> bool:
        _check_locus(locus, self.n)
        return bool((self.flags >> locus) & 1)

    def __iter__(self) -> Iterator[bool]:
        return (bool((self.flags >> i) & 1) for i in range(self.n))

    def popcount(self) -> int:
        return self.flags.bit_count()


def _digit(ch: str, alphabet: str) -> int:
    idx = alphabet.find(ch)
    if idx < 0:
        raise ValueError(f"illegal character {ch!r}, expected one of {alphabet!r}")
    return idx


def _check_locus(locus: int, n: int) -> None:
    if not 0 <= locus < n:
        raise IndexError(f"locus {locus} out of range for length {n}")


def forward_eval(op: BoolOp, left: BitArray, right: BitArray) -> BitArray:
    """Element-wise application of ``op`` to two concrete arrays."""
    if left.n != right.n:
        raise DimensionError(f"length mismatch: {left.n} vs {right.n}")
    mask = (1 << left.n) - 1
    a, b = left.bits, right.bits
    if op is BoolOp.AND:
        out = a & b
    elif op is BoolOp.OR:
        out = a | b
    elif op is BoolOp.NAND:
        out = (a & b) ^ mask
    else:
        out = (a | b) ^ mask
    return BitArray(left.n, out)


# Per operator: the parent value that admits a choice of # placement, the
# value the non-# child carries at such loci, and the value both children
# carry at the remaining concrete loci.
_REVERSE_RULES: dict[BoolOp, tuple[int, int, int]] = {
    BoolOp.AND: (0, 0, 1),
    BoolOp.OR: (1, 1, 0),
    BoolOp.NAND: (1, 0, 1),
    BoolOp.NOR: (0, 1, 0),
}


def reverse_eval(op: BoolOp, parent: TriArray) -> tuple[TriArray, TriArray, FlexMask]:
    """Invert ``op``: child arrays whose recombination reproduces ``parent``.

    At every flexible locus the default placement keeps the forced value
    in the left child ``b`` and puts ``#`` in the right child ``c``.
    Parent ``#`` loci propagate ``#`` to both children.  Returns
    ``(b, c, flex)`` with ``flex`` marking exactly the flexible loci.
    """
    n = parent.n
    mask = (1 << n) - 1
    defined = mask & ~parent.hashes
    ones = parent.bits
    zeros = defined ^ ones
    flex_value, forced, rigid_value = _REVERSE_RULES[op]
    flex = ones if flex_value else zeros
    rigid = defined ^ flex
    rigid_bits = rigid if rigid_value else 0
    b = TriArray(n, (flex if forced else 0) | rigid_bits, parent.hashes)
    c = TriArray(n, rigid_bits, parent.hashes | flex)
    return b, c, FlexMask(n, flex)


def swap_hash(
    b: TriArray, c: TriArray, flex: FlexMask, locus: int
) -> tuple[TriArray, TriArray]:
    """Move the ``#`` at ``locus`` from ``c`` to ``b``.

    Only legal at a flexible locus where ``c`` still holds the ``#``;
    the forced value crosses over so the pair stays a valid preimage.
    """
    if not (b.n == c.n == flex.n):
        raise DimensionError(f"length mismatch: {b.n}/{c.n}/{flex.n}")
    _check_locus(locus, b.n)
    m = 1 << locus
    if not flex.flags & m:
        raise InvalidSwapError(f"locus {locus} is not flexible")
    if not c.hashes & m:
        raise InvalidSwapError(f"locus {locus} of the right child holds no #")
    if b.hashes & m:
        raise InvalidSwapError(f"locus {locus} of the left child is already #")
    b2 = TriArray(b.n, b.bits & ~m, b.hashes | m)
    c2 = TriArray(c.n, c.bits | (b.bits & m), c.hashes & ~m)
    return b2, c2


def match_argument(child: TriArray, arg: BitArray) -> bool:
    """True iff ``child`` equals ``arg`` at every non-``#`` locus."""
    if child.n != arg.n:
        raise DimensionError(f"length mismatch: {child.n} vs {arg.n}")
    mask = (1 << child.n) - 1
    return ((child.bits ^ arg.bits) & (mask ^ child.hashes)) == 0
