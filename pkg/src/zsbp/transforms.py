"""Conversions between deterministic and zero-suppressed branching programs.

``det_to_zs`` works for any program and adds exactly ``n`` nodes.  The two
read-once conversions share :func:`normalize_path_sets`, which splices
variable chains onto edges until every path into a node has queried the same
set of variables.

New node ids are allocated above the largest existing id.  Unreachable nodes
are carried over untouched; use :func:`prune` to drop them.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import (BranchingProgram, Inner, NotReadOnce, Sink, is_read_once,
                   reachable, topological_order, validate)

__all__ = ["ChainMode", "PathSetAnnotation", "det_to_zs", "normalize_path_sets",
           "ro_det_to_zs", "ro_zs_to_det", "prune", "format_annotation"]


class ChainMode(str, enum.Enum):
    DONT_CARE = "dont-care"  # both edges of a chain node advance
    ZERO_CHECK = "zero-check"  # 1-edge of a chain node goes to the 0-sink


@dataclass(frozen=True)
class PathSetAnnotation:
    """Node id -> frozenset of variables queried on every path reaching it.

    The set excludes the node's own label.  0-sinks are not annotated: their
    incoming paths are irrelevant to either output semantics.
    """

    sets: dict

    def __getitem__(self, node_id):
        return self.sets[node_id]

    def __contains__(self, node_id):
        return node_id in self.sets


def det_to_zs(bp: BranchingProgram) -> BranchingProgram:
    """Zero-suppressed program computing the deterministic function of ``bp``.

    A chain ``x_1 -> ... -> x_n`` (both edges forward) ending in the 1-sink is
    appended, and every edge into a 1-sink is redirected to the chain head, so
    every accepting path queries all variables.  Output size is ``size + n``.
    """
    validate(bp)
    if bp.n == 0:
        return bp
    ones = bp.sinks(1)
    # without a 1-sink nothing is redirected; the chain still needs a terminal
    terminal = ones[0] if ones else bp.sinks()[0]
    ones = set(ones)
    base = max(bp.nodes) + 1
    chain = [base + i for i in range(bp.n)]

    def redirect(target):
        return chain[0] if target in ones else target

    nodes = {}
    for node_id, node in bp.nodes.items():
        if isinstance(node, Inner):
            node = Inner(node.var, redirect(node.lo), redirect(node.hi))
        nodes[node_id] = node
    for i, node_id in enumerate(chain):
        nxt = chain[i + 1] if i + 1 < len(chain) else terminal
        nodes[node_id] = Inner(i + 1, nxt, nxt)
    return BranchingProgram(bp.n, nodes, redirect(bp.start))


def normalize_path_sets(bp: BranchingProgram, mode: ChainMode | str = ChainMode.DONT_CARE):
    """Make path sets uniform per node; return ``(program, annotation)``.

    Nodes reachable from the start are visited in topological order.  For a
    node ``v`` entered by edges ``u -> v``, the target set is the union over
    its in-edges of ``X(u) | {var(u)}``; every edge whose own set falls short
    gets a chain of the missing variables (ascending index) spliced in.  1-sinks
    use all ``n`` variables as their target set.  0-sinks are left alone.
    """
    mode = ChainMode(mode)
    validate(bp)
    if not is_read_once(bp):
        raise NotReadOnce("program is not read-once", None)
    n = bp.n
    live = reachable(bp)
    order = topological_order(bp, live)
    nodes = dict(bp.nodes)
    next_id = max(bp.nodes) + 1
    zero_sink = None
    if mode is ChainMode.ZERO_CHECK:
        zeros = bp.sinks(0)
        if zeros:
            zero_sink = zeros[0]

    # in-edges among reachable nodes, as (pred, which) with which in {"lo", "hi"}
    in_edges: dict[int, list[tuple[int, str]]] = {v: [] for v in live}
    for u in order:
        node = bp.nodes[u]
        if isinstance(node, Inner):
            in_edges[node.lo].append((u, "lo"))
            in_edges[node.hi].append((u, "hi"))

    full = frozenset(range(1, n + 1))
    sets: dict[int, frozenset] = {}
    redirected: dict[tuple[int, str], int] = {}
    new_start = bp.start

    def make_chain(carried, missing, target):
        nonlocal next_id, zero_sink
        if not missing:
            return target
        if mode is ChainMode.ZERO_CHECK and zero_sink is None:
            zero_sink = next_id
            nodes[zero_sink] = Sink(0)
            next_id += 1
        ids = list(range(next_id, next_id + len(missing)))
        next_id += len(missing)
        for j, (node_id, var) in enumerate(zip(ids, sorted(missing))):
            nxt = ids[j + 1] if j + 1 < len(ids) else target
            hi = nxt if mode is ChainMode.DONT_CARE else zero_sink
            nodes[node_id] = Inner(var, nxt, hi)
            sets[node_id] = carried | frozenset(sorted(missing)[:j])
        return ids[0]

    for v in order:
        node = bp.nodes[v]
        if isinstance(node, Sink) and node.value == 0:
            continue
        incoming = []
        for u, which in in_edges[v]:
            incoming.append((u, which, sets[u] | {bp.nodes[u].var}))
        if v == bp.start:
            incoming.append((None, "start", frozenset()))
        if isinstance(node, Sink):
            target = full
        else:
            target = frozenset().union(*(s for _, _, s in incoming))
        sets[v] = target
        for u, which, carried in incoming:
            head = make_chain(carried, target - carried, v)
            if u is None:
                new_start = head
            else:
                redirected[(u, which)] = head

    for (u, which), head in redirected.items():
        old = nodes[u]
        if which == "lo":
            nodes[u] = Inner(old.var, head, old.hi)
        else:
            nodes[u] = Inner(old.var, old.lo, head)
    return BranchingProgram(n, nodes, new_start), PathSetAnnotation(sets)


def ro_det_to_zs(bp: BranchingProgram) -> BranchingProgram:
    """Read-once zero-suppressed program with the deterministic function of ``bp``."""
    return normalize_path_sets(bp, ChainMode.DONT_CARE)[0]


def ro_zs_to_det(bp: BranchingProgram) -> BranchingProgram:
    """Read-once deterministic program with the zero-suppressed function of ``bp``."""
    return normalize_path_sets(bp, ChainMode.ZERO_CHECK)[0]


def prune(bp: BranchingProgram) -> BranchingProgram:
    """Drop nodes unreachable from the start."""
    live = reachable(bp)
    return BranchingProgram(bp.n, {i: bp.nodes[i] for i in live}, bp.start)


def format_annotation(annotation: PathSetAnnotation) -> str:
    lines = []
    for node_id in sorted(annotation.sets):
        names = ",".join(f"x_{v}" for v in sorted(annotation.sets[node_id]))
        lines.append(f"node {node_id}: {{{names}}}")
    return "\n".join(lines) + "\n"
