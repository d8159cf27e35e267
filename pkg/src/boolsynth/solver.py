"""Tree growth loop: expand unprocessed nodes until every branch is an argument.

The root's output array is set to the problem targets; a LIFO stack of
unprocessed nodes is then drained by the controller.  When the controller
returns children (b, c), b is pushed first and c second, so c is expanded
next; this fixed order is part of the determinism contract.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .benchmarks import TruthTable
from .controller import Expansion, expand, try_assign
from .semantics import BoolOp, TriArray


class BudgetExceeded(RuntimeError):
    """The growth loop created more nodes than the budget allows."""


class UnfinishedTreeError(RuntimeError):
    """An operation that needs a finished tree saw unprocessed nodes."""


class SexprError(ValueError):
    """Malformed S-expression text."""


@dataclass(frozen=True)
class Budget:
    """Cap on total created nodes; a termination safeguard."""

    max_nodes: int = 1_000_000

    def __post_init__(self) -> None:
        if self.max_nodes < 1:
            raise ValueError(f"max_nodes must be >= 1, got {self.max_nodes}")


@dataclass
class Node:
    """One tree node: an operator, an argument leaf, or still unprocessed."""

    id: int
    outputs: TriArray | None
    parent_id: int | None = None
    op: BoolOp | None = None
    arg_index: int | None = None
    children: tuple[int, int] | None = None

    @property
    def is_argument(self) -> bool:
        return self.arg_index is not None

    @property
    def is_operator(self) -> bool:
        return self.op is not None

    @property
    def is_unprocessed(self) -> bool:
        return self.op is None and self.arg_index is None


@dataclass
class SolutionTree:
    nodes: dict[int, Node] = field(default_factory=dict)
    root_id: int = 0

    @property
    def root(self) -> Node:
        return self.nodes[self.root_id]

    @property
    def finished(self) -> bool:
        for node in self.nodes.values():
            if node.is_argument:
                if node.children is not None:
                    return False
            elif node.is_operator:
                if node.children is None:
                    return False
            else:
                return False
        return True


#: Called once per expansion with the expanded node's outputs.
ExpandHook = Callable[[TriArray, Expansion], None]


def solve(
    problem: TruthTable,
    budget: Budget = Budget(),
    on_expand: ExpandHook | None = None,
) -> SolutionTree:
    """Grow a finished tree whose root semantics are the problem targets.

    Every popped node is first checked against the input arguments and
    becomes a leaf on a match (the root itself may match directly);
    otherwise the controller expands it.  Raises BudgetExceeded when the
    created-node count would pass ``budget.max_nodes``; ControllerStuck
    propagates from the controller.
    """
    args = list(problem.args)
    root = Node(id=0, outputs=problem.targets.to_tri())
    nodes = {0: root}
    created = 1
    stack = [0]
    while stack:
        node = nodes[stack.pop()]
        if node.is_argument:
            continue
        match = try_assign(node.outputs, args)
        if match is not None:
            node.arg_index = match
            continue
        if created + 2 > budget.max_nodes:
            raise BudgetExceeded(
                f"{created} nodes created, expanding would pass the "
                f"cap of {budget.max_nodes}"
            )
        parent = nodes[node.parent_id] if node.parent_id is not None else None
        grand = (
            nodes[parent.parent_id]
            if parent is not None and parent.parent_id is not None
            else None
        )
        expansion = expand(
            node.outputs,
            args,
            parent_outputs=parent.outputs if parent is not None else None,
            grandparent_outputs=grand.outputs if grand is not None else None,
        )
        node.op = expansion.op
        b_id, c_id = created, created + 1
        created += 2
        nodes[b_id] = Node(
            id=b_id,
            outputs=expansion.b_outputs,
            parent_id=node.id,
            arg_index=expansion.b_arg,
        )
        nodes[c_id] = Node(
            id=c_id,
            outputs=expansion.c_outputs,
            parent_id=node.id,
            arg_index=expansion.c_arg,
        )
        node.children = (b_id, c_id)
        stack.append(b_id)
        stack.append(c_id)
        if on_expand is not None:
            on_expand(node.outputs, expansion)
    return SolutionTree(nodes=nodes, root_id=0)


def tree_size(tree: SolutionTree) -> int:
    """Total node count (operators plus argument leaves)."""
    if not tree.finished:
        raise UnfinishedTreeError("tree still has unprocessed nodes")
    return len(tree.nodes)


_CLOSE = object()


def to_sexpr(tree: SolutionTree) -> str:
    """Canonical parenthesized text, e.g. ``(AND (OR A1 A2) A3)``."""
    if not tree.finished:
        raise UnfinishedTreeError("tree still has unprocessed nodes")
    tokens: list[str] = []
    stack: list[object] = [tree.root_id]
    while stack:
        item = stack.pop()
        if item is _CLOSE:
            tokens.append(")")
            continue
        node = tree.nodes[item]  # type: ignore[index]
        if node.is_argument:
            tokens.append(f"A{node.arg_index}")
        else:
            tokens.append(f"({node.op.name}")
            b_id, c_id = node.children
            stack.append(_CLOSE)
            stack.append(c_id)
            stack.append(b_id)
    parts: list[str] = []
    for tok in tokens:
        if parts and tok != ")" and not parts[-1].endswith("("):
            parts.append(" ")
        parts.append(tok)
    return "".join(parts)


_TOKEN_RE = re.compile(r"[()]|[^\s()]+")
_ARG_RE = re.compile(r"^A([1-9][0-9]*)$")


def parse_sexpr(text: str) -> SolutionTree:
    """Parse tree text back into shape and labels (outputs are not recorded).

    Whitespace between tokens is insignificant; exactly one expression is
    expected.
    """
    tokens = _TOKEN_RE.findall(text)
    nodes: dict[int, Node] = {}
    next_id = 0
    # open operator frames: (node id, collected child ids)
    frames: list[tuple[int, list[int]]] = []
    root_id: int | None = None

    def attach(node_id: int) -> None:
        nonlocal root_id
        if frames:
            frames[-1][1].append(node_id)
        elif root_id is None:
            root_id = node_id
        else:
            raise SexprError("trailing content after the expression")

    pos = 0
    while pos < len(tokens):
        tok = tokens[pos]
        if tok == "(":
            if pos + 1 >= len(tokens):
                raise SexprError("dangling '('")
            op_name = tokens[pos + 1]
            if op_name not in BoolOp.__members__:
                raise SexprError(f"expected an operator after '(', got {op_name!r}")
            if not frames and root_id is not None:
                raise SexprError("trailing content after the expression")
            parent = frames[-1][0] if frames else None
            node = Node(id=next_id, outputs=None, parent_id=parent, op=BoolOp[op_name])
            nodes[next_id] = node
            frames.append((next_id, []))
            next_id += 1
            pos += 2
            continue
        if tok == ")":
            if not frames:
                raise SexprError("unbalanced ')'")
            node_id, child_ids = frames.pop()
            if len(child_ids) != 2:
                raise SexprError(
                    f"operator {nodes[node_id].op.name} has {len(child_ids)} "
                    "children, expected 2"
                )
            nodes[node_id].children = (child_ids[0], child_ids[1])
            attach(node_id)
            pos += 1
            continue
        arg = _ARG_RE.match(tok)
        if arg is None:
            raise SexprError(f"unexpected token {tok!r}")
        parent = frames[-1][0] if frames else None
        nodes[next_id] = Node(
            id=next_id, outputs=None, parent_id=parent, arg_index=int(arg.group(1))
        )
        attach(next_id)
        next_id += 1
        pos += 1

    if frames:
        raise SexprError("unbalanced '(': expression not closed")
    if root_id is None:
        raise SexprError("empty input: no expression found")
    return SolutionTree(nodes=nodes, root_id=root_id)
