"""Random and structured program generators used by tests and the bench."""
from __future__ import annotations

import random

from .core import BadParameter, BranchingProgram, Inner, Sink

__all__ = ["random_program", "random_read_once_program", "random_leveled_program",
           "exactly_k_program"]


def random_program(rng: random.Random, n: int, size: int) -> BranchingProgram:
    """Random program with ``size`` nodes (two sinks plus inner nodes).

    Nodes are created bottom-up, each pointing at earlier nodes, so the graph
    is acyclic.  The start is the last node; some nodes may be unreachable.
    """
    if size < 2:
        raise BadParameter("size must be at least 2")
    nodes = {0: Sink(0), 1: Sink(1)}
    for node_id in range(2, size):
        nodes[node_id] = Inner(rng.randint(1, n), rng.randrange(node_id), rng.randrange(node_id))
    return BranchingProgram(n, nodes, size - 1)


def random_read_once_program(rng: random.Random, n: int, size: int,
                             tries: int = 50) -> BranchingProgram:
    """Random read-once program with at most ``size`` nodes.

    Each new node picks its children first and then a variable that occurs
    nowhere below them.
    """
    nodes = {0: Sink(0), 1: Sink(1)}
    below = {0: 0, 1: 0}  # mask of variables at or below each node
    full = (1 << n) - 1
    for node_id in range(2, size):
        for _ in range(tries):
            lo, hi = rng.randrange(node_id), rng.randrange(node_id)
            free = [v for v in range(1, n + 1) if not (below[lo] | below[hi]) >> (v - 1) & 1]
            if free:
                break
        else:
            break
        var = rng.choice(free)
        nodes[node_id] = Inner(var, lo, hi)
        below[node_id] = below[lo] | below[hi] | (1 << (var - 1))
        if below[node_id] == full and rng.random() < 0.5:
            break
    return BranchingProgram(n, nodes, max(nodes))


def random_leveled_program(rng: random.Random, n: int, levels: int,
                           width: int = 5) -> BranchingProgram:
    """Leveled program: ``levels`` query levels of ``width`` nodes, then sinks.

    Every node at level ``t`` points into level ``t+1``; the start is node 0
    of level 0 alone, so the reachable part has width at most ``width``.
    """
    sinks = {levels * width: Sink(0), levels * width + 1: Sink(1)}
    nodes = dict(sinks)

    def targets(t):
        if t == levels:
            return sorted(sinks)
        return [t * width + p for p in range(width)]

    for t in range(levels):
        nxt = targets(t + 1)
        count = 1 if t == 0 else width
        for p in range(count):
            nodes[t * width + p] = Inner(rng.randint(1, n), rng.choice(nxt), rng.choice(nxt))
    return BranchingProgram(n, nodes, 0)


def exactly_k_program(n: int, k: int) -> BranchingProgram:
    """Read-once counting program for "exactly k of x1..xn are 1".

    Node ``(i, c)`` reads ``x_i`` having seen ``c`` ones; counts above ``k``
    fall to the 0-sink.
    """
    if not 0 <= k <= n:
        raise BadParameter(f"need 0 <= k <= n, got k={k}, n={n}")
    reject, accept = 0, 1
    nodes = {reject: Sink(0), accept: Sink(1)}

    def node_id(i, c):
        if c > k:
            return reject
        if i > n:
            return accept if c == k else reject
        return 2 + (i - 1) * (k + 1) + c

    for i in range(1, n + 1):
        for c in range(min(i - 1, k) + 1):
            nodes[node_id(i, c)] = Inner(i, node_id(i + 1, c), node_id(i + 1, c + 1))
    return BranchingProgram(n, nodes, node_id(1, 0))
