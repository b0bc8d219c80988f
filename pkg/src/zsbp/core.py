"""Branching programs under deterministic and zero-suppressed semantics.

A :class:`BranchingProgram` is a DAG of inner nodes (labeled by a variable
index in ``1..n``) and 0/1 sinks.  The same graph computes two functions:

* deterministic: the value of the sink reached by the assignment;
* zero-suppressed: that value, AND-ed with "every variable that was not
  queried on the path is 0".

The variable count ``n`` is always explicit, because the zero-suppressed
output depends on the variables a path does *not* mention.

Assignments are accepted as a sequence of bits ``(x_1, ..., x_n)`` or as an
integer index whose least significant bit is ``x_1``.
"""
from __future__ import annotations

import enum
import graphlib
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

__all__ = [
    "ZsbpError", "ProgramError", "CyclicGraph", "DanglingReference",
    "BadVariableIndex", "MissingStart", "TooManyVariables", "BadParameter",
    "NotReadOnce", "Semantics", "Inner", "Sink", "BranchingProgram",
    "TruthTable", "validate", "eval_det", "eval_zs", "evaluate",
    "truth_table", "is_read_once", "size", "reachable", "topological_order",
    "gen_family", "parse_bp", "format_bp", "ENUMERATION_CAP",
]

ENUMERATION_CAP = 20


class ZsbpError(Exception):
    """Base class for every error raised by this package."""


class ProgramError(ZsbpError, ValueError):
    def __init__(self, message: str, node_id: int | None = None):
        super().__init__(message)
        self.node_id = node_id


class CyclicGraph(ProgramError):
    pass


class DanglingReference(ProgramError):
    pass


class BadVariableIndex(ProgramError):
    pass


class MissingStart(ProgramError):
    pass


class NotReadOnce(ProgramError):
    pass


class TooManyVariables(ZsbpError, ValueError):
    pass


class BadParameter(ZsbpError, ValueError):
    pass


class Semantics(str, enum.Enum):
    DET = "det"
    ZS = "zs"


@dataclass(frozen=True)
class Inner:
    var: int
    lo: int
    hi: int


@dataclass(frozen=True)
class Sink:
    value: int


Node = Union[Inner, Sink]
AssignmentLike = Union[int, Sequence[int]]


@dataclass(frozen=True, eq=False)
class BranchingProgram:
    """Immutable branching program over variables ``x_1..x_n``.

    ``nodes`` maps node ids to :class:`Inner` or :class:`Sink`.  Construction
    does not validate; call :func:`validate` (the parsers and transforms do).
    """

    n: int
    nodes: Mapping[int, Node]
    start: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", MappingProxyType(dict(self.nodes)))

    def __eq__(self, other):
        if not isinstance(other, BranchingProgram):
            return NotImplemented
        return (self.n == other.n and self.start == other.start
                and dict(self.nodes) == dict(other.nodes))

    def __hash__(self):
        return hash((self.n, self.start, frozenset(self.nodes.items())))

    def __len__(self):
        return len(self.nodes)

    def sinks(self, value: int | None = None) -> list[int]:
        return sorted(i for i, v in self.nodes.items()
                      if isinstance(v, Sink) and (value is None or v.value == value))

    def successors(self, node_id: int) -> tuple[int, ...]:
        node = self.nodes[node_id]
        if isinstance(node, Inner):
            return (node.lo, node.hi)
        return ()


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Output bits of a Boolean function, indexed by assignment.

    ``bits[i]`` is the value on the assignment whose binary expansion is
    ``i`` with ``x_1`` as the least significant bit.
    """

    n: int
    bits: np.ndarray

    def __post_init__(self):
        bits = np.array(self.bits, dtype=np.uint8).reshape(-1)
        if bits.size != 1 << self.n:
            raise BadParameter(f"truth table over {self.n} variables needs "
                               f"{1 << self.n} bits, got {bits.size}")
        if np.any(bits > 1):
            raise BadParameter("truth table bits must be 0 or 1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str, n: int | None = None) -> "TruthTable":
        text = text.strip()
        if n is None:
            n = max(len(text).bit_length() - 1, 0)
        if any(c not in "01" for c in text):
            raise BadParameter(f"truth table string must be 0/1 characters: {text!r}")
        return cls(n, [int(c) for c in text])

    @classmethod
    def from_function(cls, n: int, fn) -> "TruthTable":
        """Tabulate ``fn(bits)`` where ``bits`` is the tuple ``(x_1..x_n)``."""
        return cls(n, [int(bool(fn(index_to_bits(i, n)))) for i in range(1 << n)])

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __getitem__(self, index: int) -> int:
        return int(self.bits[index])

    def __len__(self):
        return int(self.bits.size)

    def __str__(self):
        return "".join("1" if b else "0" for b in self.bits)

    def __repr__(self):
        return f"TruthTable(n={self.n}, bits={str(self)!r})"

    def dumps(self) -> str:
        return f"vars {self.n}\n{self}\n"

    @classmethod
    def loads(cls, text: str) -> "TruthTable":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if len(lines) != 2 or not lines[0].startswith("vars"):
            raise BadParameter("truth table file must be 'vars <n>' and one bit string")
        return cls.from_string(lines[1], int(lines[0].split()[1]))


def index_to_bits(index: int, n: int) -> tuple[int, ...]:
    return tuple((index >> j) & 1 for j in range(n))


def _as_mask(a: AssignmentLike, n: int) -> int:
    if isinstance(a, (int, np.integer)):
        a = int(a)
        if not 0 <= a < (1 << n):
            raise BadParameter(f"assignment index {a} out of range for n={n}")
        return a
    bits = list(a)
    if len(bits) != n:
        raise BadParameter(f"assignment has {len(bits)} entries, expected {n}")
    mask = 0
    for j, b in enumerate(bits):
        if b not in (0, 1, True, False):
            raise BadParameter(f"assignment entries must be 0/1, got {b!r}")
        mask |= int(b) << j
    return mask


def validate(bp: BranchingProgram) -> None:
    """Raise a :class:`ProgramError` subclass if ``bp`` is malformed."""
    if bp.n < 0:
        raise BadParameter(f"negative variable count {bp.n}")
    if bp.start not in bp.nodes:
        raise MissingStart(f"start node {bp.start} does not exist", bp.start)
    for node_id in sorted(bp.nodes):
        node = bp.nodes[node_id]
        if isinstance(node, Sink):
            if node.value not in (0, 1):
                raise ProgramError(f"sink {node_id} has value {node.value!r}", node_id)
            continue
        if not 1 <= node.var <= bp.n:
            raise BadVariableIndex(
                f"node {node_id} is labeled x_{node.var} but n={bp.n}", node_id)
        for target in (node.lo, node.hi):
            if target not in bp.nodes:
                raise DanglingReference(
                    f"node {node_id} points to missing node {target}", node_id)
    topological_order(bp)


def topological_order(bp: BranchingProgram, nodes: Iterable[int] | None = None) -> list[int]:
    """Node ids ordered so that every edge goes forward.

    Ties are broken by node id, so the order is deterministic.
    """
    keep = set(bp.nodes) if nodes is None else set(nodes)
    sorter = graphlib.TopologicalSorter()
    for node_id in sorted(keep):
        sorter.add(node_id)
        for target in bp.successors(node_id):
            if target in keep:
                sorter.add(target, node_id)
    try:
        sorter.prepare()
    except graphlib.CycleError as exc:
        cycle = exc.args[1]
        raise CyclicGraph(f"cycle through node {cycle[0]}: {cycle}", cycle[0]) from None
    order = []
    while sorter.is_active():
        ready = sorted(sorter.get_ready())
        order.extend(ready)
        sorter.done(*ready)
    return order


def reachable(bp: BranchingProgram) -> set[int]:
    seen = {bp.start}
    stack = [bp.start]
    while stack:
        for target in bp.successors(stack.pop()):
            if target not in seen:
                seen.add(target)
                stack.append(target)
    return seen


def _walk(bp: BranchingProgram, mask: int) -> tuple[int, int]:
    """Follow the computation path; return (sink value, queried-variable mask)."""
    node_id = bp.start
    queried = 0
    while True:
        node = bp.nodes[node_id]
        if isinstance(node, Sink):
            return node.value, queried
        queried |= 1 << (node.var - 1)
        node_id = node.hi if (mask >> (node.var - 1)) & 1 else node.lo


def eval_det(bp: BranchingProgram, a: AssignmentLike) -> int:
    value, _ = _walk(bp, _as_mask(a, bp.n))
    return value


def eval_zs(bp: BranchingProgram, a: AssignmentLike) -> int:
    mask = _as_mask(a, bp.n)
    value, queried = _walk(bp, mask)
    return int(value == 1 and mask & ~queried == 0)


def evaluate(bp: BranchingProgram, a: AssignmentLike, semantics: Semantics | str) -> int:
    if Semantics(semantics) is Semantics.DET:
        return eval_det(bp, a)
    return eval_zs(bp, a)


def truth_table(bp: BranchingProgram, semantics: Semantics | str = Semantics.DET,
                cap: int = ENUMERATION_CAP) -> TruthTable:
    """Tabulate ``bp`` over all ``2**n`` assignments.

    All assignments are pushed through the graph at once in topological
    order; each node splits the batch of assignments that reach it.
    """
    semantics = Semantics(semantics)
    if bp.n > cap:
        raise TooManyVariables(f"n={bp.n} exceeds the enumeration cap {cap}")
    total = 1 << bp.n
    index = np.arange(total, dtype=np.int64)
    out = np.zeros(total, dtype=np.uint8)
    live = reachable(bp)
    # node -> list of (assignment indices, queried masks) arriving there
    arriving: dict[int, list[tuple[np.ndarray, np.ndarray]]] = {
        bp.start: [(index, np.zeros(total, dtype=np.int64))]}
    for node_id in topological_order(bp, live):
        parts = arriving.pop(node_id, None)
        if not parts:
            continue
        idx = np.concatenate([p[0] for p in parts])
        queried = np.concatenate([p[1] for p in parts])
        node = bp.nodes[node_id]
        if isinstance(node, Sink):
            if node.value == 1:
                if semantics is Semantics.DET:
                    out[idx] = 1
                else:
                    out[idx] = ((idx & ~queried) == 0).astype(np.uint8)
            continue
        bit = 1 << (node.var - 1)
        queried = queried | bit
        high = (idx & bit) != 0
        arriving.setdefault(node.lo, []).append((idx[~high], queried[~high]))
        arriving.setdefault(node.hi, []).append((idx[high], queried[high]))
    return TruthTable(bp.n, out)


def _below_masks(bp: BranchingProgram, nodes: set[int]) -> dict[int, int]:
    """For each node, the mask of variables labeling nodes strictly below it."""
    below: dict[int, int] = {}
    for node_id in reversed(topological_order(bp, nodes)):
        node = bp.nodes[node_id]
        if isinstance(node, Sink):
            below[node_id] = 0
            continue
        acc = 0
        for child in (node.lo, node.hi):
            c = bp.nodes[child]
            acc |= below[child]
            if isinstance(c, Inner):
                acc |= 1 << (c.var - 1)
        below[node_id] = acc
    return below


def is_read_once(bp: BranchingProgram) -> bool:
    """True iff no computation path from the start queries a variable twice.

    Equivalent to: no node reachable from the start reaches another node with
    the same label.  Unreachable nodes are ignored.
    """
    live = reachable(bp)
    below = _below_masks(bp, live)
    for node_id in live:
        node = bp.nodes[node_id]
        if isinstance(node, Inner) and below[node_id] >> (node.var - 1) & 1:
            return False
    return True


def size(bp: BranchingProgram) -> int:
    """Node count, sinks and unreachable nodes included."""
    return len(bp.nodes)


def gen_family(name: str, n: int, k: int | None = None) -> TruthTable:
    """Truth table of ``const1``, ``and-neg`` (all variables 0) or ``exactly-k``."""
    key = name.lower().replace("_", "-")
    if not isinstance(n, int) or n < 1:
        raise BadParameter(f"n must be a positive integer, got {n!r}")
    if n > ENUMERATION_CAP:
        raise TooManyVariables(f"n={n} exceeds the enumeration cap {ENUMERATION_CAP}")
    idx = np.arange(1 << n)
    if key in ("const1", "const-1"):
        if k is not None:
            raise BadParameter("const1 takes no k")
        return TruthTable(n, np.ones(1 << n, dtype=np.uint8))
    if key in ("and-neg", "andofnegations", "and-of-negations"):
        if k is not None:
            raise BadParameter("and-neg takes no k")
        return TruthTable(n, (idx == 0).astype(np.uint8))
    if key in ("exactly-k", "exactlyk"):
        if k is None or not 0 <= k <= n:
            raise BadParameter(f"exactly-k needs 0 <= k <= n, got k={k!r}")
        weights = np.array([bin(i).count("1") for i in range(1 << n)])
        return TruthTable(n, (weights == k).astype(np.uint8))
    raise BadParameter(f"unknown function family {name!r}")


def parse_bp(text: str) -> BranchingProgram:
    """Parse the line-oriented ``.bp`` format and validate the result."""
    n = start = None
    nodes: dict[int, Node] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            keyword, args = line[0], [int(tok) for tok in line[1:]]
        except ValueError:
            raise BadParameter(f"line {lineno}: non-integer field in {raw.strip()!r}") from None
        arity = {"vars": 1, "inner": 4, "sink": 2, "start": 1}.get(keyword)
        if arity is None:
            raise BadParameter(f"line {lineno}: unknown keyword {keyword!r}")
        if len(args) != arity:
            raise BadParameter(f"line {lineno}: {keyword} takes {arity} fields")
        if keyword == "vars":
            n = args[0]
        elif keyword == "start":
            start = args[0]
        else:
            node_id = args[0]
            if node_id < 0:
                raise BadParameter(f"line {lineno}: negative node id {node_id}")
            if node_id in nodes:
                raise BadParameter(f"line {lineno}: duplicate node id {node_id}")
            if keyword == "inner":
                nodes[node_id] = Inner(*args[1:])
            else:
                nodes[node_id] = Sink(args[1])
    if n is None:
        raise BadParameter("missing 'vars' line")
    if start is None:
        raise MissingStart("missing 'start' line")
    bp = BranchingProgram(n, nodes, start)
    validate(bp)
    return bp


def format_bp(bp: BranchingProgram) -> str:
    lines = [f"vars {bp.n}"]
    for node_id in sorted(bp.nodes):
        node = bp.nodes[node_id]
        if isinstance(node, Inner):
            lines.append(f"inner {node_id} {node.var} {node.lo} {node.hi}")
        else:
            lines.append(f"sink {node_id} {node.value}")
    lines.append(f"start {bp.start}")
    return "\n".join(lines) + "\n"
