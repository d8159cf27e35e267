"""Deterministic greedy expansion of one node into an operator and two children.

For the node under expansion, every (reverse operator, input argument)
pair gets an error table describing how the default left child array
mismatches that argument.  Tables are ranked, the cheapest workable one
is applied by swapping don't-cares across to the right child, and a
repeat check rejects children that reproduce the node's own array or
its parent's.  The whole procedure is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .semantics import (
    BitArray,
    BoolOp,
    DimensionError,
    FlexMask,
    TriArray,
    match_argument,
    reverse_eval,
)


class ControllerStuck(RuntimeError):
    """Every candidate expansion failed the repeat check."""


@dataclass(frozen=True)
class ErrorTable:
    """Mismatch statistics of one (operator, argument) candidate.

    ``e0``/``e1`` count loci where the argument holds 0/1 but the left
    child holds the opposite concrete value; ``m0``/``m1`` count how many
    of those are flexible (fixable by a swap).  ``c_hash_count`` is the
    number of don't-cares in the default right child.
    """

    op: BoolOp
    arg_index: int
    e0: int
    e1: int
    m0: int
    m1: int
    c_hash_count: int


@dataclass(frozen=True)
class RankKey:
    """Lexicographic sort key of one error table, all fields ascending.

    ``k`` is the error class whose fixable loci will be swapped;
    ``rem_k = e_k - m_k`` is what would remain of it afterwards.
    """

    k: int
    rem_k: int
    e_k: int
    rem_j: int
    e_j: int
    c_hash_count: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.rem_k, self.e_k, self.rem_j, self.e_j, self.c_hash_count)


@dataclass(frozen=True)
class Decision:
    """Record of the winning table and the number of swaps applied."""

    op: BoolOp
    arg_index: int
    e0: int
    e1: int
    m0: int
    m1: int
    swaps: int


@dataclass(frozen=True)
class Expansion:
    """Controller result: operator for the node plus both child arrays."""

    op: BoolOp
    b_outputs: TriArray
    c_outputs: TriArray
    b_arg: int | None
    c_arg: int | None
    decision: Decision


def compute_error_table(
    b: TriArray,
    flex: FlexMask,
    arg: BitArray,
    op: BoolOp,
    arg_index: int,
    c_hash_count: int,
) -> ErrorTable:
    """Count how the default left child mismatches one input argument.

    Don't-care loci of ``b`` are never erroneous.
    """
    if not (b.n == flex.n == arg.n):
        raise DimensionError(f"length mismatch: {b.n}/{flex.n}/{arg.n}")
    mask = (1 << b.n) - 1
    e0_loci = b.bits & (arg.bits ^ mask)
    e1_loci = arg.bits & ((b.bits | b.hashes) ^ mask)
    return ErrorTable(
        op=op,
        arg_index=arg_index,
        e0=e0_loci.bit_count(),
        e1=e1_loci.bit_count(),
        m0=(e0_loci & flex.flags).bit_count(),
        m1=(e1_loci & flex.flags).bit_count(),
        c_hash_count=c_hash_count,
    )


def rank_key(table: ErrorTable) -> RankKey:
    """Key ordering error tables, best (lowest) first.

    The class with fewer errors remaining after all possible swaps is
    fixed; ties pick class 1.
    """
    rem0 = table.e0 - table.m0
    rem1 = table.e1 - table.m1
    if rem1 <= rem0:
        return RankKey(1, rem1, table.e1, rem0, table.e0, table.c_hash_count)
    return RankKey(0, rem0, table.e0, rem1, table.e1, table.c_hash_count)


def apply_fixes(
    b: TriArray, c: TriArray, flex: FlexMask, arg: BitArray, k: int
) -> tuple[TriArray, TriArray]:
    """Swap the ``#`` across at every fixable class-``k`` error locus.

    Exactly the flexible loci erroneous against ``arg`` with argument
    value ``k`` are touched, i.e. the table's ``m_k`` swaps; zero swaps
    is valid.
    """
    if not (b.n == c.n == flex.n == arg.n):
        raise DimensionError(f"length mismatch: {b.n}/{c.n}/{flex.n}/{arg.n}")
    mask = (1 << b.n) - 1
    if k == 0:
        loci = b.bits & (arg.bits ^ mask) & flex.flags
    else:
        loci = arg.bits & ((b.bits | b.hashes) ^ mask) & flex.flags
    if not loci:
        return b, c
    b2 = TriArray(b.n, b.bits & ~loci, b.hashes | loci)
    c2 = TriArray(c.n, c.bits | (b.bits & loci), c.hashes & ~loci)
    return b2, c2


def try_assign(outputs: TriArray, args: Sequence[BitArray]) -> int | None:
    """Smallest 1-based argument index representable by ``outputs``, if any."""
    for idx, arg in enumerate(args, start=1):
        if match_argument(outputs, arg):
            return idx
    return None


def expand(
    node_outputs: TriArray,
    args: Sequence[BitArray],
    parent_outputs: TriArray | None = None,
    grandparent_outputs: TriArray | None = None,
) -> Expansion:
    """Choose an operator for the node and produce both child arrays.

    All 4*v error tables are ranked; candidates are tried best first.
    A candidate survives only if neither fixed child array exactly
    equals the node's own array or ``parent_outputs`` (three-valued
    equality, ``#`` compared literally).  ``grandparent_outputs`` is
    accepted for callers that track one more level but is not consulted
    by the current rule set.  Raises ControllerStuck when every table
    fails the repeat check.
    """
    del grandparent_outputs
    if not args:
        raise ValueError("at least one input argument is required")
    for arg in args:
        if arg.n != node_outputs.n:
            raise DimensionError(f"length mismatch: {node_outputs.n} vs {arg.n}")

    candidates = []
    for op in BoolOp:
        b, c, flex = reverse_eval(op, node_outputs)
        c_hash_count = c.hash_count()
        for idx, arg in enumerate(args, start=1):
            table = compute_error_table(b, flex, arg, op, idx, c_hash_count)
            key = rank_key(table)
            candidates.append(
                (key.as_tuple(), op.value, idx, table, key.k, b, c, flex)
            )
    candidates.sort(key=lambda cand: cand[:3])

    for _key, _opv, idx, table, k, b, c, flex in candidates:
        arg = args[idx - 1]
        b2, c2 = apply_fixes(b, c, flex, arg, k)
        if b2 == node_outputs or c2 == node_outputs:
            continue
        if parent_outputs is not None and (
            b2 == parent_outputs or c2 == parent_outputs
        ):
            continue
        decision = Decision(
            op=table.op,
            arg_index=table.arg_index,
            e0=table.e0,
            e1=table.e1,
            m0=table.m0,
            m1=table.m1,
            swaps=table.m1 if k == 1 else table.m0,
        )
        return Expansion(
            op=table.op,
            b_outputs=b2,
            c_outputs=c2,
            b_arg=try_assign(b2, args),
            c_arg=try_assign(c2, args),
            decision=decision,
        )
    raise ControllerStuck(
        f"no candidate expansion of {node_outputs} passes the repeat check"
    )
