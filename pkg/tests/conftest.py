"""Independent oracles shared by the test modules.

These deliberately avoid the package's own evaluation code: they walk the
raw node mapping recursively and enumerate paths explicitly.
"""
import random

import pytest

from zsbp.core import Inner, Sink


def naive_walk(bp, bits):
    """Recursive path walker over ``bits = (x_1, ..., x_n)``.

    Returns (sink value, list of variables queried along the path).
    """
    def go(node_id, seen):
        node = bp.nodes[node_id]
        if isinstance(node, Sink):
            return node.value, seen
        nxt = node.hi if bits[node.var - 1] else node.lo
        return go(nxt, seen + [node.var])

    return go(bp.start, [])


def naive_det(bp, bits):
    return naive_walk(bp, bits)[0]


def naive_zs(bp, bits):
    value, seen = naive_walk(bp, bits)
    return int(value == 1 and all(bits[j] == 0 for j in range(bp.n) if j + 1 not in seen))


def naive_table(bp, semantics):
    fn = naive_det if semantics == "det" else naive_zs
    return "".join(str(fn(bp, bits)) for bits in all_assignments(bp.n))


def all_assignments(n):
    """Assignments in truth-table order (x_1 least significant)."""
    for i in range(1 << n):
        yield tuple((i >> j) & 1 for j in range(n))


def all_paths(bp, source=None):
    """Every path from ``source`` (default: start) as a list of node ids."""
    source = bp.start if source is None else source
    node = bp.nodes[source]
    if isinstance(node, Sink):
        return [[source]]
    out = []
    for child in (node.lo, node.hi):
        out.extend([source] + p for p in all_paths(bp, child))
    return out


def path_vars(bp, path):
    return [bp.nodes[v].var for v in path if isinstance(bp.nodes[v], Inner)]


def read_once_by_paths(bp):
    return all(len(set(pv)) == len(pv) for pv in (path_vars(bp, p) for p in all_paths(bp)))


def tree_search(tt_bits, n, depth, semantics):
    """Unmemoized search for a decision tree of depth <= ``depth``.

    Any variable may be queried at any node, repeats included.  A node is
    described by the set of assignments reaching it and the variables
    queried above it.
    """
    def ok(reaching, queried, d):
        if all(tt_bits[i] == 0 for i in reaching):
            return True
        if semantics == "det":
            if all(tt_bits[i] == 1 for i in reaching):
                return True
        else:
            if all(tt_bits[i] == int(i & ~queried == 0) for i in reaching):
                return True
        if d == 0:
            return False
        for var in range(1, n + 1):
            bit = 1 << (var - 1)
            lo = [i for i in reaching if not i & bit]
            hi = [i for i in reaching if i & bit]
            if ok(lo, queried | bit, d - 1) and ok(hi, queried | bit, d - 1):
                return True
        return False

    return ok(list(range(1 << n)), 0, depth)


def brute_complexity(tt_bits, n, semantics):
    for d in range(n + 2):
        if tree_search(tt_bits, n, d, semantics):
            return d
    raise AssertionError("no tree within depth n+1")


@pytest.fixture
def rng():
    return random.Random(20261015)


ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line, then assert it."""
    def record(label, ok, detail=""):
        ACCEPTANCE.append((label, bool(ok), detail))
        assert ok, f"{label}: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
