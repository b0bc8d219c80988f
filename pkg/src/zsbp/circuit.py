"""Compile zero-suppressed branching programs to fan-in-2 Boolean circuits.

Pipeline:

1. :func:`levelize_zs` lays the program out in synchronized levels (longest
   distance from the start).  Edges that skip levels are bridged by ``Pass``
   entries, which move the computation forward without querying anything.
   Bridging with dummy query nodes would be wrong: a query puts its variable
   on the path and so exempts it from the all-zeros condition.
2. Each level becomes a :class:`LevelMap`: for every source index, gates for
   the binary code of the target index plus ``n`` gates for the set of
   variables queried so far.
3. Adjacent maps are composed pairwise in a balanced tree of rounds.  A
   composition routes each row through a one-hot selector over the next
   map's rows; the mask union is folded into the same OR tree, so carrying
   the masks costs no extra depth.
4. The output is ``[target == accept] AND (mask_j OR NOT x_j for all j)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .core import (AssignmentLike, BadParameter, BranchingProgram, Inner,
                   Sink, TruthTable, ZsbpError, _as_mask, reachable,
                   topological_order, validate, ENUMERATION_CAP,
                   TooManyVariables)

__all__ = ["Circuit", "CircuitBuilder", "eval_circuit", "circuit_table",
           "parse_circ", "format_circ", "Query", "Pass",
           "LeveledTransitionSystem", "levelize_zs", "run_lts",
           "width_of_leveled", "LevelMap", "level_map", "compose",
           "compile_lts", "compile_zs_to_circuit", "CompileReport",
           "compile_report", "depth_bound", "DEPTH_C", "DEPTH_C_PRIME",
           "formula_to_circuit"]

# depth <= DEPTH_C*(ceil(log2 w)+1)*(ceil(log2 L)+1) + DEPTH_C_PRIME*(ceil(log2 n)+1)
DEPTH_C = 3
DEPTH_C_PRIME = 2


class CircuitError(ZsbpError, ValueError):
    pass


# ---------------------------------------------------------------- circuits

@dataclass(frozen=True)
class Circuit:
    """Gates in topological order; each gate is a tuple.

    ``("INPUT", k)``, ``("CONST", b)``, ``("NOT", i)``, ``("AND", i, j)``,
    ``("OR", i, j)``, where ``i, j`` index earlier gates.
    """

    n: int
    gates: tuple
    output: int

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(tuple(g) for g in self.gates))
        for gid, gate in enumerate(self.gates):
            kind = gate[0]
            if kind == "INPUT":
                if not 1 <= gate[1] <= self.n:
                    raise CircuitError(f"g{gid}: input x{gate[1]} outside x1..x{self.n}")
            elif kind == "CONST":
                if gate[1] not in (0, 1):
                    raise CircuitError(f"g{gid}: constant must be 0 or 1")
            elif kind in ("NOT", "AND", "OR"):
                arity = 1 if kind == "NOT" else 2
                if len(gate) != arity + 1:
                    raise CircuitError(f"g{gid}: {kind} takes {arity} operands")
                if any(not 0 <= ref < gid for ref in gate[1:]):
                    raise CircuitError(f"g{gid}: operands must reference earlier gates")
            else:
                raise CircuitError(f"g{gid}: unknown gate kind {kind!r}")
        if not 0 <= self.output < len(self.gates):
            raise CircuitError(f"output g{self.output} does not exist")

    @property
    def size(self) -> int:
        return len(self.gates)

    @property
    def depth(self) -> int:
        """Longest path from an input or constant to the output, in gates."""
        depth = [0] * len(self.gates)
        for gid, gate in enumerate(self.gates):
            if gate[0] in ("NOT", "AND", "OR"):
                depth[gid] = 1 + max(depth[ref] for ref in gate[1:])
        return depth[self.output] if self.gates else 0


def eval_circuit(c: Circuit, a: AssignmentLike) -> int:
    mask = _as_mask(a, c.n)
    val = [0] * len(c.gates)
    for gid, gate in enumerate(c.gates):
        kind = gate[0]
        if kind == "INPUT":
            val[gid] = (mask >> (gate[1] - 1)) & 1
        elif kind == "CONST":
            val[gid] = gate[1]
        elif kind == "NOT":
            val[gid] = 1 - val[gate[1]]
        elif kind == "AND":
            val[gid] = val[gate[1]] & val[gate[2]]
        else:
            val[gid] = val[gate[1]] | val[gate[2]]
    return val[c.output]


def circuit_table(c: Circuit, cap: int = ENUMERATION_CAP) -> TruthTable:
    """Truth table, evaluating all assignments at once with bit-parallel ints."""
    if c.n > cap:
        raise TooManyVariables(f"n={c.n} exceeds the enumeration cap {cap}")
    total = 1 << c.n
    full = (1 << total) - 1
    inputs = []
    for j in range(c.n):
        word = 0
        for i in range(total):
            if (i >> j) & 1:
                word |= 1 << i
        inputs.append(word)
    val = [0] * len(c.gates)
    for gid, gate in enumerate(c.gates):
        kind = gate[0]
        if kind == "INPUT":
            val[gid] = inputs[gate[1] - 1]
        elif kind == "CONST":
            val[gid] = full if gate[1] else 0
        elif kind == "NOT":
            val[gid] = full ^ val[gate[1]]
        elif kind == "AND":
            val[gid] = val[gate[1]] & val[gate[2]]
        else:
            val[gid] = val[gate[1]] | val[gate[2]]
    word = val[c.output]
    return TruthTable(c.n, np.array([(word >> i) & 1 for i in range(total)], dtype=np.uint8))


def format_circ(c: Circuit) -> str:
    lines = [f"inputs {c.n}"]
    for gid, gate in enumerate(c.gates):
        kind = gate[0]
        if kind == "INPUT":
            rhs = f"INPUT x{gate[1]}"
        elif kind == "CONST":
            rhs = f"CONST {gate[1]}"
        else:
            rhs = " ".join([kind] + [f"g{ref}" for ref in gate[1:]])
        lines.append(f"g{gid} = {rhs}")
    lines.append(f"output g{c.output}")
    return "\n".join(lines) + "\n"


def parse_circ(text: str) -> Circuit:
    """Parse ``.circ`` text.  Gate ids are renumbered in file order."""
    n = None
    ids: dict[str, int] = {}
    gates = []
    output = None

    def ref(tok, lineno):
        if tok not in ids:
            raise CircuitError(f"line {lineno}: {tok} is not defined earlier")
        return ids[tok]

    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        try:
            if tokens[0] == "inputs":
                n = int(tokens[1])
            elif tokens[0] == "output":
                output = ref(tokens[1], lineno)
            elif len(tokens) >= 3 and tokens[1] == "=":
                name, kind, args = tokens[0], tokens[2], tokens[3:]
                if name in ids:
                    raise CircuitError(f"line {lineno}: duplicate gate {name}")
                if kind == "INPUT":
                    if len(args) != 1 or not args[0].startswith("x"):
                        raise CircuitError(f"line {lineno}: INPUT takes x<k>")
                    gate = ("INPUT", int(args[0][1:]))
                elif kind == "CONST":
                    gate = ("CONST", int(args[0]))
                elif kind in ("NOT", "AND", "OR"):
                    if len(args) != (1 if kind == "NOT" else 2):
                        raise CircuitError(f"line {lineno}: wrong operand count for {kind}")
                    gate = (kind,) + tuple(ref(tok, lineno) for tok in args)
                else:
                    raise CircuitError(f"line {lineno}: unknown gate kind {kind!r}")
                ids[name] = len(gates)
                gates.append(gate)
            else:
                raise CircuitError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ZsbpError):
                raise
            raise CircuitError(f"line {lineno}: malformed line {raw.strip()!r}") from None
    if n is None:
        raise CircuitError("missing 'inputs' line")
    if output is None:
        raise CircuitError("missing 'output' line")
    return Circuit(n, gates, output)


class CircuitBuilder:
    """Hash-consing gate factory with constant folding."""

    def __init__(self, n: int):
        self.n = n
        self.gates: list[tuple] = []
        self._index: dict[tuple, int] = {}

    def _add(self, gate):
        gid = self._index.get(gate)
        if gid is None:
            gid = len(self.gates)
            self.gates.append(gate)
            self._index[gate] = gid
        return gid

    def const(self, b):
        return self._add(("CONST", int(b)))

    def input(self, k):
        return self._add(("INPUT", k))

    def _const_value(self, g):
        gate = self.gates[g]
        return gate[1] if gate[0] == "CONST" else None

    def _negates(self, a, b):
        return self.gates[a] == ("NOT", b) or self.gates[b] == ("NOT", a)

    def not_(self, a):
        value = self._const_value(a)
        if value is not None:
            return self.const(1 - value)
        if self.gates[a][0] == "NOT":
            return self.gates[a][1]
        return self._add(("NOT", a))

    def and_(self, a, b):
        va, vb = self._const_value(a), self._const_value(b)
        if va == 0 or vb == 0 or self._negates(a, b):
            return self.const(0)
        if va == 1:
            return b
        if vb == 1 or a == b:
            return a
        return self._add(("AND", min(a, b), max(a, b)))

    def or_(self, a, b):
        va, vb = self._const_value(a), self._const_value(b)
        if va == 1 or vb == 1 or self._negates(a, b):
            return self.const(1)
        if va == 0:
            return b
        if vb == 0 or a == b:
            return a
        return self._add(("OR", min(a, b), max(a, b)))

    def _tree(self, op, items, empty):
        items = list(items)
        if not items:
            return self.const(empty)
        while len(items) > 1:
            nxt = [op(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
            if len(items) % 2:
                nxt.append(items[-1])
            items = nxt
        return items[0]

    def and_all(self, items):
        return self._tree(self.and_, items, 1)

    def or_all(self, items):
        return self._tree(self.or_, items, 0)

    def literal(self, k, positive):
        g = self.input(k)
        return g if positive else self.not_(g)

    def build(self, output: int) -> Circuit:
        """Circuit containing only the output's cone, renumbered in order."""
        keep = set()
        stack = [output]
        while stack:
            g = stack.pop()
            if g in keep:
                continue
            keep.add(g)
            if self.gates[g][0] in ("NOT", "AND", "OR"):
                stack.extend(self.gates[g][1:])
        remap = {}
        gates = []
        for g in sorted(keep):
            gate = self.gates[g]
            if gate[0] in ("NOT", "AND", "OR"):
                gate = (gate[0],) + tuple(remap[r] for r in gate[1:])
            remap[g] = len(gates)
            gates.append(gate)
        return Circuit(self.n, gates, remap[output])


# ------------------------------------------------------- leveled transitions

@dataclass(frozen=True)
class Query:
    """Read ``var``; go to ``on0``/``on1`` = (target index, queried mask)."""

    var: int
    on0: tuple
    on1: tuple


@dataclass(frozen=True)
class Pass:
    target: int
    mask: int = 0


Entry = Union[Query, Pass]


@dataclass(frozen=True)
class LeveledTransitionSystem:
    """Synchronized levels.  ``levels[t][i]`` sends index ``i`` at level ``t``
    to an index at level ``t+1``; the last level's targets index the
    ``final_width`` terminal slots, of which ``accept_index`` means accept.

    Masks are ints with bit ``j-1`` standing for ``x_j``.
    """

    n: int
    levels: tuple
    final_width: int
    start_index: int
    accept_index: int
    width_bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(tuple(lv) for lv in self.levels))
        widths = [len(lv) for lv in self.levels] + [self.final_width]
        for t, level in enumerate(self.levels):
            for i, entry in enumerate(level):
                edges = [entry.on0, entry.on1] if isinstance(entry, Query) else [
                    (entry.target, entry.mask)]
                for target, mask in edges:
                    if not 0 <= target < widths[t + 1]:
                        raise BadParameter(f"level {t} entry {i}: target {target} out of range")
                    if isinstance(entry, Query) and not (mask >> (entry.var - 1)) & 1:
                        raise BadParameter(f"level {t} entry {i}: mask lacks x{entry.var}")
                if isinstance(entry, Pass) and entry.mask:
                    raise BadParameter(f"level {t} entry {i}: Pass mask must be empty")
        if not 0 <= self.start_index < widths[0]:
            raise BadParameter("start index out of range")
        if not 0 <= self.accept_index < self.final_width:
            raise BadParameter("accept index out of range")
        if self.width_bound is not None and max(widths) > self.width_bound:
            raise BadParameter(f"width {max(widths)} exceeds bound {self.width_bound}")

    @property
    def widths(self) -> list[int]:
        return [len(lv) for lv in self.levels] + [self.final_width]


def width_of_leveled(lts: LeveledTransitionSystem) -> int:
    return max(lts.widths)


def levelize_zs(bp: BranchingProgram) -> LeveledTransitionSystem:
    """Longest-path layering of the reachable part of ``bp``.

    All sinks land on the final level, which has two slots: accept (0) for
    1-sinks and reject (1) for 0-sinks.
    """
    validate(bp)
    live = reachable(bp)
    order = topological_order(bp, live)
    level = {bp.start: 0}
    for u in order:
        for v in bp.successors(u):
            level[v] = max(level.get(v, 0), level[u] + 1)
    inner = [u for u in order if isinstance(bp.nodes[u], Inner)]
    depth = 1 + max(level[u] for u in inner) if inner else 0

    def key(node_id):
        node = bp.nodes[node_id]
        if isinstance(node, Sink):
            return ("sink", node.value)
        return ("node", node_id)

    def home(k):
        return depth if k[0] == "sink" else level[k[1]]

    # slot keys per level: inner nodes first (by id), then pass carriers
    slots = [[("node", u) for u in sorted(inner) if level[u] == t] for t in range(depth)]
    carriers = [set() for _ in range(depth)]
    for u in inner:
        for v in bp.successors(u):
            for t in range(level[u] + 1, home(key(v))):
                carriers[t].add(key(v))
    for t in range(depth):
        slots[t].extend(("pass", k) for k in sorted(carriers[t], key=_carrier_order))
    final = [("sink", 1), ("sink", 0)]
    index = [{k: i for i, k in enumerate(lv)} for lv in slots] + [
        {k: i for i, k in enumerate(final)}]

    def locate(k, t):
        """Index at level ``t`` where the computation headed for ``k`` sits."""
        return index[t][k] if home(k) == t else index[t][("pass", k)]

    levels = []
    for t in range(depth):
        entries = []
        for kind, k in slots[t]:
            if kind == "node":
                node = bp.nodes[k]
                bit = 1 << (node.var - 1)
                entries.append(Query(node.var, (locate(key(node.lo), t + 1), bit),
                                     (locate(key(node.hi), t + 1), bit)))
            else:
                entries.append(Pass(locate(k, t + 1)))
        levels.append(entries)
    if depth == 0:
        start_index = 0 if bp.nodes[bp.start].value == 1 else 1
    else:
        start_index = index[0][("node", bp.start)]
    return LeveledTransitionSystem(bp.n, levels, len(final), start_index, 0)


def _carrier_order(k):
    return (0 if k[0] == "node" else 1, -k[1] if k[0] == "sink" else k[1])


def run_lts(lts: LeveledTransitionSystem, a: AssignmentLike) -> int:
    mask = _as_mask(a, lts.n)
    index, queried = lts.start_index, 0
    for level in lts.levels:
        entry = level[index]
        if isinstance(entry, Pass):
            index = entry.target
        else:
            index, m = entry.on1 if (mask >> (entry.var - 1)) & 1 else entry.on0
            queried |= m
    return int(index == lts.accept_index and mask & ~queried == 0)


# ------------------------------------------------------------- level maps

def _code_bits(width: int) -> int:
    return (width - 1).bit_length()


@dataclass
class LevelMap:
    """Rows of gate ids: ``targets[r]`` is the binary code (LSB first) of the
    index reached from source ``r``; ``masks[r][j]`` says whether ``x_{j+1}``
    was queried on the way."""

    out_width: int
    targets: list = field(default_factory=list)
    masks: list = field(default_factory=list)

    @property
    def in_width(self) -> int:
        return len(self.targets)


def level_map(builder: CircuitBuilder, level, out_width: int) -> LevelMap:
    k = _code_bits(out_width)
    n = builder.n
    lm = LevelMap(out_width)

    def mux(var, b0, b1):
        if b0 == b1:
            return builder.const(b0)
        return builder.literal(var, b1 == 1)

    for entry in level:
        if isinstance(entry, Pass):
            lm.targets.append([builder.const((entry.target >> j) & 1) for j in range(k)])
            lm.masks.append([builder.const(0)] * n)
            continue
        (t0, m0), (t1, m1) = entry.on0, entry.on1
        lm.targets.append([mux(entry.var, (t0 >> j) & 1, (t1 >> j) & 1) for j in range(k)])
        lm.masks.append([mux(entry.var, (m0 >> j) & 1, (m1 >> j) & 1) for j in range(n)])
    return lm


def _select(builder, indicators, values, extra=None):
    """OR over ``ind_q AND values[q]`` (plus ``extra``) as one balanced tree."""
    if len(set(values)) == 1:
        # indicators are one-hot, so the selection is the common value
        return values[0] if extra is None else builder.or_(extra, values[0])
    terms = [builder.and_(ind, v) for ind, v in zip(indicators, values)]
    if extra is not None:
        terms.insert(0, extra)
    return builder.or_all(terms)


def _decoder(builder, code, width):
    """One-hot indicators for ``code == q``, q in range(width)."""
    return [builder.and_all(b if (q >> j) & 1 else builder.not_(b)
                            for j, b in enumerate(code))
            for q in range(width)]


def compose(builder: CircuitBuilder, first: LevelMap, second: LevelMap) -> LevelMap:
    """Map equal to running ``first`` then ``second``."""
    if first.out_width != second.in_width:
        raise BadParameter("level maps do not line up")
    out = LevelMap(second.out_width)
    k = _code_bits(second.out_width)
    for code, mask in zip(first.targets, first.masks):
        ind = _decoder(builder, code, second.in_width)
        out.targets.append([_select(builder, ind, [row[j] for row in second.targets])
                            for j in range(k)])
        out.masks.append([_select(builder, ind, [row[j] for row in second.masks], mask[j])
                          for j in range(builder.n)])
    return out


def _accept_gate(builder, lm: LevelMap, row: int, accept_index: int):
    code = lm.targets[row]
    hit = builder.and_all(b if (accept_index >> j) & 1 else builder.not_(b)
                          for j, b in enumerate(code))
    terms = [hit] + [builder.or_(lm.masks[row][j], builder.not_(builder.input(j + 1)))
                     for j in range(builder.n)]
    return builder.and_all(terms)


def compile_lts(lts: LeveledTransitionSystem, schedule=None) -> Circuit:
    """Compile a leveled system.

    ``schedule`` optionally fixes the composition order as a nested tuple of
    level indices, e.g. ``((0, 1), 2)``; the default is balanced pairwise
    rounds.
    """
    builder = CircuitBuilder(lts.n)
    widths = lts.widths
    maps = [level_map(builder, lv, widths[t + 1]) for t, lv in enumerate(lts.levels)]
    if not maps:
        k = _code_bits(lts.final_width)
        identity = LevelMap(lts.final_width,
                            [[builder.const((r >> j) & 1) for j in range(k)]
                             for r in range(lts.final_width)],
                            [[builder.const(0)] * lts.n for _ in range(lts.final_width)])
        return builder.build(_accept_gate(builder, identity, lts.start_index, lts.accept_index))
    if schedule is None:
        while len(maps) > 1:
            nxt = [compose(builder, maps[i], maps[i + 1]) for i in range(0, len(maps) - 1, 2)]
            if len(maps) % 2:
                nxt.append(maps[-1])
            maps = nxt
        total = maps[0]
    else:
        def walk(node):
            if isinstance(node, int):
                return maps[node]
            left, right = node
            return compose(builder, walk(left), walk(right))
        total = walk(schedule)
    return builder.build(_accept_gate(builder, total, lts.start_index, lts.accept_index))


def compile_zs_to_circuit(bp: BranchingProgram) -> Circuit:
    """Circuit computing the zero-suppressed function of ``bp``."""
    return compile_lts(levelize_zs(bp))


def depth_bound(width: int, levels: int, n: int) -> int:
    lg = lambda x: math.ceil(math.log2(x)) if x > 1 else 0  # noqa: E731
    return DEPTH_C * (lg(width) + 1) * (lg(levels) + 1) + DEPTH_C_PRIME * (lg(n) + 1)


@dataclass(frozen=True)
class CompileReport:
    size: int
    depth: int
    levels: int
    width: int
    depth_bound: int

    def lines(self) -> list[str]:
        return [f"size {self.size}", f"depth {self.depth}", f"levels {self.levels}",
                f"width {self.width}",
                f"depth_bound {self.depth_bound} (C={DEPTH_C}, C'={DEPTH_C_PRIME})"]


def compile_report(bp: BranchingProgram) -> tuple[Circuit, CompileReport]:
    lts = levelize_zs(bp)
    circuit = compile_lts(lts)
    width = width_of_leveled(lts)
    return circuit, CompileReport(circuit.size, circuit.depth, len(lts.levels), width,
                                  depth_bound(width, len(lts.levels), bp.n))


def formula_to_circuit(f) -> Circuit:
    """Gate-for-gate translation of a formula; ``Z(g)`` becomes
    ``g AND (NOT x_j for every x_j not occurring in g)``."""
    from .formula import And, Const, Not, Or, Var, Zsup, vars_of

    builder = CircuitBuilder(f.n)

    def go(node):
        if isinstance(node, Const):
            return builder.const(node.value)
        if isinstance(node, Var):
            return builder.input(node.index)
        if isinstance(node, Not):
            return builder.not_(go(node.arg))
        if isinstance(node, And):
            return builder.and_(go(node.left), go(node.right))
        if isinstance(node, Or):
            return builder.or_(go(node.left), go(node.right))
        if isinstance(node, Zsup):
            inside = vars_of(node.arg)
            zeros = [builder.not_(builder.input(j)) for j in range(1, f.n + 1)
                     if j not in inside]
            return builder.and_all([go(node.arg)] + zeros)
        raise BadParameter(f"unknown formula node {node!r}")

    return builder.build(go(f.root))
