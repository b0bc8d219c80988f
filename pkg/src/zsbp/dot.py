"""Graphviz DOT export.  One node or edge per line, ordered by id."""
from __future__ import annotations

from .circuit import Circuit
from .core import BranchingProgram, Inner

__all__ = ["program_to_dot", "circuit_to_dot"]


def program_to_dot(bp: BranchingProgram, name: str = "bp") -> str:
    lines = [f"digraph {name} {{"]
    for node_id in sorted(bp.nodes):
        node = bp.nodes[node_id]
        if isinstance(node, Inner):
            lines.append(f'  n{node_id} [label="x{node.var}"];')
        else:
            lines.append(f'  n{node_id} [label="{node.value}", shape=box];')
    lines.append('  start [shape=point];')
    lines.append(f"  start -> n{bp.start};")
    for node_id in sorted(bp.nodes):
        node = bp.nodes[node_id]
        if isinstance(node, Inner):
            lines.append(f"  n{node_id} -> n{node.lo} [style=dashed];")
            lines.append(f"  n{node_id} -> n{node.hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def circuit_to_dot(c: Circuit, name: str = "circuit") -> str:
    lines = [f"digraph {name} {{"]
    for gid, gate in enumerate(c.gates):
        label = f"x{gate[1]}" if gate[0] == "INPUT" else (
            str(gate[1]) if gate[0] == "CONST" else gate[0])
        shape = ", shape=doublecircle" if gid == c.output else ""
        lines.append(f'  g{gid} [label="{label}"{shape}];')
    for gid, gate in enumerate(c.gates):
        if gate[0] in ("NOT", "AND", "OR"):
            for ref in gate[1:]:
                lines.append(f"  g{ref} -> g{gid};")
    lines.append("}")
    return "\n".join(lines) + "\n"
