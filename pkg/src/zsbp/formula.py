"""Boolean formulas with the zero-suppression operator ``Z(.)``.

``Z(g)`` is 1 iff ``g`` is 1 and every variable that does not occur
syntactically in ``g`` is 0.  Occurrence is syntactic: ``(x1&!x1)`` still
contains ``x1``.  Nested ``Z`` is allowed and each one is checked against the
formula's full variable universe.

Grammar (binary operators always parenthesized, whitespace ignored)::

    F := '0' | '1' | 'x' INT | '!' F | '(' F '&' F ')' | '(' F '|' F ')' | 'Z(' F ')'
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import AssignmentLike, BadParameter, TruthTable, ZsbpError, _as_mask

__all__ = ["Const", "Var", "Not", "And", "Or", "Zsup", "Formula",
           "FormulaSyntaxError", "VarOutOfRange", "parse_formula", "vars_of",
           "eval_formula", "formula_table", "has_zsup", "exactly_k_dnf",
           "exactly_k_zsup", "formula_size", "random_formula",
           "parse_formula_file", "format_formula_file"]


class FormulaSyntaxError(ZsbpError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class VarOutOfRange(ZsbpError, ValueError):
    pass


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Not:
    arg: "Node"

    def __str__(self):
        return f"!{self.arg}"


@dataclass(frozen=True)
class And:
    left: "Node"
    right: "Node"

    def __str__(self):
        return f"({self.left}&{self.right})"


@dataclass(frozen=True)
class Or:
    left: "Node"
    right: "Node"

    def __str__(self):
        return f"({self.left}|{self.right})"


@dataclass(frozen=True)
class Zsup:
    arg: "Node"

    def __str__(self):
        return f"Z({self.arg})"


Node = Union[Const, Var, Not, And, Or, Zsup]


@dataclass(frozen=True)
class Formula:
    root: Node
    n: int

    def __post_init__(self):
        for v in vars_of(self.root):
            if not 1 <= v <= self.n:
                raise VarOutOfRange(f"x{v} is outside x1..x{self.n}")

    def __str__(self):
        return str(self.root)


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(Z\s*\()|([01!()&|]))")


def parse_formula(text: str, n: int) -> Formula:
    if n < 1:
        raise BadParameter(f"n must be >= 1, got {n}")
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = len(text) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start)
        at = m.start(1) if m.group(1) else m.start(3) if m.group(3) else m.start(4)
        if m.group(1):
            tokens.append(("var", int(m.group(2)), at))
        elif m.group(3):
            tokens.append(("Z(", None, at))
        else:
            tokens.append((m.group(4), None, at))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    i = 0

    def expect(kind):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        i += 1
        return tok

    def formula():
        nonlocal i
        kind, value, at = tokens[i]
        i += 1
        if kind in ("0", "1"):
            return Const(int(kind))
        if kind == "var":
            if not 1 <= value <= n:
                raise VarOutOfRange(f"x{value} is outside x1..x{n} (position {at})")
            return Var(value)
        if kind == "!":
            return Not(formula())
        if kind == "Z(":
            arg = formula()
            expect(")")
            return Zsup(arg)
        if kind == "(":
            left = formula()
            op = tokens[i]
            if op[0] not in ("&", "|"):
                raise FormulaSyntaxError(f"expected '&' or '|', found {op[0]!r}", op[2])
            i += 1
            right = formula()
            expect(")")
            return And(left, right) if op[0] == "&" else Or(left, right)
        raise FormulaSyntaxError(f"unexpected {kind!r}", at)

    root = formula()
    expect("end")
    return Formula(root, n)


def vars_of(f: Formula | Node) -> frozenset:
    if isinstance(f, Formula):
        f = f.root
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, Var):
        return frozenset([f.index])
    if isinstance(f, (Not, Zsup)):
        return vars_of(f.arg)
    return vars_of(f.left) | vars_of(f.right)


def has_zsup(f: Formula | Node) -> bool:
    if isinstance(f, Formula):
        f = f.root
    if isinstance(f, Zsup):
        return True
    if isinstance(f, Not):
        return has_zsup(f.arg)
    if isinstance(f, (And, Or)):
        return has_zsup(f.left) or has_zsup(f.right)
    return False


def formula_size(f: Formula | Node) -> int:
    """Number of AST nodes."""
    if isinstance(f, Formula):
        f = f.root
    if isinstance(f, (Const, Var)):
        return 1
    if isinstance(f, (Not, Zsup)):
        return 1 + formula_size(f.arg)
    return 1 + formula_size(f.left) + formula_size(f.right)


def _eval(node: Node, mask: int, universe: int) -> int:
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return (mask >> (node.index - 1)) & 1
    if isinstance(node, Not):
        return 1 - _eval(node.arg, mask, universe)
    if isinstance(node, And):
        return _eval(node.left, mask, universe) & _eval(node.right, mask, universe)
    if isinstance(node, Or):
        return _eval(node.left, mask, universe) | _eval(node.right, mask, universe)
    inside = 0
    for v in vars_of(node.arg):
        inside |= 1 << (v - 1)
    if mask & universe & ~inside:
        return 0
    return _eval(node.arg, mask, universe)


def eval_formula(f: Formula, a: AssignmentLike) -> int:
    return _eval(f.root, _as_mask(a, f.n), (1 << f.n) - 1)


def formula_table(f: Formula) -> TruthTable:
    universe = (1 << f.n) - 1
    return TruthTable(f.n, np.array([_eval(f.root, i, universe) for i in range(1 << f.n)],
                                    dtype=np.uint8))


def _fold(op, items):
    items = list(items)
    if len(items) == 1:
        return items[0]
    mid = len(items) // 2
    return op(_fold(op, items[:mid]), _fold(op, items[mid:]))


def exactly_k_dnf(n: int, k: int) -> Formula:
    """Plain DNF of "exactly k of x1..xn are 1": one full minterm per k-subset."""
    if not 0 <= k <= n:
        raise BadParameter(f"need 0 <= k <= n, got k={k}, n={n}")
    terms = []
    for ones in itertools.combinations(range(1, n + 1), k):
        lits = [Var(v) if v in ones else Not(Var(v)) for v in range(1, n + 1)]
        terms.append(_fold(And, lits))
    return Formula(_fold(Or, terms), n)


def exactly_k_zsup(n: int, k: int) -> Formula:
    """Zero-suppressed form: OR over k-subsets S of ``Z(AND of S)``."""
    if not 0 <= k <= n:
        raise BadParameter(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        return Formula(Zsup(Const(1)), n)
    terms = [Zsup(_fold(And, [Var(v) for v in ones]))
             for ones in itertools.combinations(range(1, n + 1), k)]
    return Formula(_fold(Or, terms), n)


def random_formula(rng: random.Random, n: int, depth: int, zsup: bool = False,
                   leaf_prob: float = 0.25) -> Formula:
    """Random formula of depth at most ``depth`` over ``x1..xn``."""

    def grow(d):
        if d == 0 or rng.random() < leaf_prob:
            if rng.random() < 0.1:
                return Const(rng.randint(0, 1))
            return Var(rng.randint(1, n))
        ops = [Not, And, Or, And, Or] + ([Zsup] if zsup else [])
        op = rng.choice(ops)
        if op in (Not, Zsup):
            return op(grow(d - 1))
        return op(grow(d - 1), grow(d - 1))

    return Formula(grow(depth), n)


def parse_formula_file(text: str) -> Formula:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) != 2 or lines[0].split()[0] != "vars" or len(lines[0].split()) != 2:
        raise BadParameter("formula file must be 'vars <n>' followed by one formula line")
    return parse_formula(lines[1], int(lines[0].split()[1]))


def format_formula_file(f: Formula) -> str:
    return f"vars {f.n}\n{f}\n"
