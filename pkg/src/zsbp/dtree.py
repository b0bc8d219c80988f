"""Exact deterministic and zero-suppressed decision-tree complexity.

Both measures are computed by a memoized minimax over restrictions of the
truth table.  A restriction is stored as the tuple of output bits over the
still-unqueried ("live") variables, ordered like a truth table over those
variables.  Branching only ever picks a live variable, so witness trees are
read-once by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (BranchingProgram, Inner, ProgramError, Semantics, Sink,
                   TooManyVariables, TruthTable, truth_table)

__all__ = ["DecisionTree", "ComplexityResult", "d_complexity", "z_complexity",
           "eval_witness", "tree_depth", "DEFAULT_CAP"]

DEFAULT_CAP = 5


@dataclass(frozen=True)
class DecisionTree:
    program: BranchingProgram
    depth: int


@dataclass(frozen=True)
class ComplexityResult:
    value: int
    witness: DecisionTree


def tree_depth(bp: BranchingProgram) -> int:
    """Depth in inner nodes; raises if ``bp`` is not tree-shaped."""
    indegree = {i: 0 for i in bp.nodes}
    for node_id in bp.nodes:
        for target in bp.successors(node_id):
            indegree[target] += 1
    for node_id, deg in indegree.items():
        if deg != (0 if node_id == bp.start else 1):
            raise ProgramError(f"node {node_id} has in-degree {deg}; not a tree", node_id)

    def depth(node_id):
        node = bp.nodes[node_id]
        if isinstance(node, Sink):
            return 0
        return 1 + max(depth(node.lo), depth(node.hi))

    return depth(bp.start)


def _restrict(bits: tuple, live: tuple, var: int, value: int) -> tuple:
    """Fix ``var`` (an element of ``live``) to ``value``."""
    pos = live.index(var)
    return tuple(b for i, b in enumerate(bits) if (i >> pos) & 1 == value)


def _check_cap(tt: TruthTable, cap: int):
    if tt.n > cap:
        raise TooManyVariables(f"n={tt.n} exceeds the decision-tree cap {cap}")


def _solve(tt: TruthTable, leaf):
    """Shared minimax.  ``leaf(bits)`` returns a sink value or None."""
    n = tt.n

    @lru_cache(maxsize=None)
    def best(bits, live):
        value = leaf(bits)
        if value is not None:
            return 0, None
        choice = None
        for var in live:
            rest = tuple(v for v in live if v != var)
            cost = max(best(_restrict(bits, live, var, 0), rest)[0],
                       best(_restrict(bits, live, var, 1), rest)[0])
            if choice is None or cost < choice[0]:
                choice = (cost, var)
        return 1 + choice[0], choice[1]

    nodes: dict[int, object] = {}

    def build(bits, live):
        node_id = len(nodes)
        nodes[node_id] = None
        _, var = best(bits, live)
        if var is None:
            nodes[node_id] = Sink(leaf(bits))
            return node_id
        rest = tuple(v for v in live if v != var)
        lo = build(_restrict(bits, live, var, 0), rest)
        hi = build(_restrict(bits, live, var, 1), rest)
        nodes[node_id] = Inner(var, lo, hi)
        return node_id

    bits = tuple(int(b) for b in tt.bits)
    live = tuple(range(1, n + 1))
    value = best(bits, live)[0]
    build(bits, live)
    program = BranchingProgram(n, nodes, 0)
    return ComplexityResult(value, DecisionTree(program, tree_depth(program)))


def d_complexity(tt: TruthTable, cap: int = DEFAULT_CAP) -> ComplexityResult:
    """D(f): minimal depth of a deterministic decision tree computing ``tt``."""
    _check_cap(tt, cap)

    def leaf(bits):
        if all(bits):
            return 1
        if not any(bits):
            return 0
        return None

    return _solve(tt, leaf)


def z_complexity(tt: TruthTable, cap: int = DEFAULT_CAP) -> ComplexityResult:
    """Z(f): minimal depth of a zero-suppressed decision tree computing ``tt``.

    A 1-leaf is correct exactly when the restriction is "all live variables
    are 0", i.e. only index 0 of the restricted table is set.
    """
    _check_cap(tt, cap)

    def leaf(bits):
        if not any(bits):
            return 0
        if bits[0] == 1 and not any(bits[1:]):
            return 1
        return None

    return _solve(tt, leaf)


def eval_witness(tree: DecisionTree | ComplexityResult,
                 semantics: Semantics | str) -> TruthTable:
    if isinstance(tree, ComplexityResult):
        tree = tree.witness
    return truth_table(tree.program, semantics)
