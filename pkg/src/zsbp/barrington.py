"""Width-5 permutation branching programs for formulas.

A permutation program is a list of instructions ``(var, p0, p1)`` over the
symmetric group on ``{0..4}``; running it applies ``p0`` or ``p1`` to the
current point depending on the variable.  A program *computes f with cycle s*
if the product is ``s`` when f=1 and the identity when f=0.

* literal: one instruction ``(i, id, s)``;
* NOT f: f with cycle ``s^-1``, last instruction right-multiplied by ``s``;
* f AND g: ``f(a) g(b) f(a^-1) g(b^-1)`` for 5-cycles whose commutator is a
  5-cycle, then conjugated onto the requested cycle;
* f OR g: De Morgan.

Permutations are tuples ``p`` with ``p[x]`` the image of ``x``; products are
written in application order.
"""
from __future__ import annotations

import itertools

from .core import BadParameter, BranchingProgram, Inner, Sink, ZsbpError
from .formula import And, Const, Formula, Not, Or, Var, Zsup

__all__ = ["ZsupNotAllowed", "barrington", "permutation_program", "TARGET_CYCLE"]

IDENTITY = (0, 1, 2, 3, 4)
TARGET_CYCLE = (1, 2, 3, 4, 0)


class ZsupNotAllowed(ZsbpError, ValueError):
    pass


def then(*perms):
    """Apply ``perms`` left to right."""
    out = IDENTITY
    for p in perms:
        out = tuple(p[x] for x in out)
    return out


def inverse(p):
    inv = [0] * 5
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def _is_5cycle(p):
    x, steps = p[0], 1
    while x != 0:
        x, steps = p[x], steps + 1
    return steps == 5


_CYCLES = [p for p in itertools.permutations(range(5)) if _is_5cycle(p)]
_ALL = list(itertools.permutations(range(5)))


def _commutator_pair():
    for a in _CYCLES:
        for b in _CYCLES:
            if _is_5cycle(then(a, b, inverse(a), inverse(b))):
                return a, b
    raise AssertionError("no commutator pair in S5")  # pragma: no cover


_ALPHA, _BETA = _commutator_pair()
_GAMMA = then(_ALPHA, _BETA, inverse(_ALPHA), inverse(_BETA))
_conjugators: dict = {}


def _conjugator(src, dst):
    """``theta`` with ``then(inverse(theta), src, theta) == dst``."""
    key = (src, dst)
    if key not in _conjugators:
        _conjugators[key] = next(t for t in _ALL if then(inverse(t), src, t) == dst)
    return _conjugators[key]


def _conjugate(program, theta):
    ti = inverse(theta)
    return [(v, then(ti, p0, theta), then(ti, p1, theta)) for v, p0, p1 in program]


def permutation_program(node, cycle=TARGET_CYCLE):
    """Instructions computing ``node`` with the given 5-cycle."""
    if isinstance(node, Zsup):
        raise ZsupNotAllowed("Z(.) has no width-5 construction")
    if isinstance(node, Const):
        return [(1, cycle, cycle)] if node.value else [(1, IDENTITY, IDENTITY)]
    if isinstance(node, Var):
        return [(node.index, IDENTITY, cycle)]
    if isinstance(node, Not):
        prog = permutation_program(node.arg, inverse(cycle))
        v, p0, p1 = prog[-1]
        prog[-1] = (v, then(p0, cycle), then(p1, cycle))
        return prog
    if isinstance(node, And):
        body = (permutation_program(node.left, _ALPHA)
                + permutation_program(node.right, _BETA)
                + permutation_program(node.left, inverse(_ALPHA))
                + permutation_program(node.right, inverse(_BETA)))
        return _conjugate(body, _conjugator(_GAMMA, cycle))
    if isinstance(node, Or):
        return permutation_program(Not(And(Not(node.left), Not(node.right))), cycle)
    raise BadParameter(f"unknown formula node {node!r}")


def barrington(f: Formula) -> BranchingProgram:
    """Leveled width-5 deterministic program computing ``f``.

    Level ``t`` holds the reachable points of ``{0..4}``; node ``(t, p)`` has
    id ``5*t + p``.  The walk starts at point 0 and accepts iff it ends at
    ``TARGET_CYCLE[0]``.  Only reachable nodes are emitted.
    """
    if f.n < 1:
        raise BadParameter("barrington needs at least one variable")
    prog = permutation_program(f.root)
    steps = len(prog)
    reject, accept = 5 * steps + 5, 5 * steps + 6
    nodes = {reject: Sink(0), accept: Sink(1)}

    def node_id(t, p):
        if t == steps:
            return accept if p == TARGET_CYCLE[0] else reject
        return 5 * t + p

    frontier = {0}
    for t, (var, p0, p1) in enumerate(prog):
        nxt = set()
        for p in sorted(frontier):
            nodes[node_id(t, p)] = Inner(var, node_id(t + 1, p0[p]), node_id(t + 1, p1[p]))
            nxt.update((p0[p], p1[p]))
        frontier = nxt
    return BranchingProgram(f.n, nodes, node_id(0, 0))
