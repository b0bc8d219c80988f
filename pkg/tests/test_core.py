import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zsbp.core import (BadParameter, BadVariableIndex, BranchingProgram,
                       CyclicGraph, DanglingReference, Inner, MissingStart,
                       Sink, TooManyVariables, TruthTable, eval_det, eval_zs,
                       format_bp, gen_family, is_read_once, parse_bp, size,
                       truth_table, validate)
from zsbp.randgen import random_program, random_read_once_program

from conftest import (all_assignments, naive_det, naive_table, naive_zs,
                      read_once_by_paths)

ONE = BranchingProgram(3, {0: Sink(1)}, 0)
X1 = BranchingProgram(3, {0: Sink(0), 1: Sink(1), 2: Inner(1, 0, 1)}, 2)


def test_validate_smallest_program():
    validate(BranchingProgram(1, {7: Sink(1)}, 7))


@pytest.mark.parametrize("bp, error, node", [
    (BranchingProgram(2, {0: Sink(0), 1: Inner(1, 1, 0)}, 1), CyclicGraph, 1),
    (BranchingProgram(3, {0: Sink(0), 1: Sink(1), 2: Inner(4, 0, 1)}, 2), BadVariableIndex, 2),
    (BranchingProgram(3, {0: Sink(0), 2: Inner(1, 0, 5)}, 2), DanglingReference, 2),
    (BranchingProgram(3, {0: Sink(0)}, 9), MissingStart, 9),
])
def test_validate_errors_name_node(bp, error, node):
    with pytest.raises(error) as info:
        validate(bp)
    assert info.value.node_id == node


def test_longer_cycle_detected():
    bp = BranchingProgram(2, {0: Sink(0), 1: Inner(1, 2, 0), 2: Inner(2, 3, 0),
                              3: Inner(1, 1, 0)}, 1)
    with pytest.raises(CyclicGraph):
        validate(bp)


def test_eval_constant_and_single_test():
    assert all(eval_det(ONE, a) == 1 for a in all_assignments(3))
    assert eval_det(X1, (1, 0, 0)) == 1
    assert eval_det(X1, 0b001) == 1


def test_eval_zs_bare_one_sink_is_and_of_negations():
    assert eval_zs(ONE, (0, 0, 0)) == 1
    assert eval_zs(ONE, (0, 1, 0)) == 0


def test_eval_zs_single_test():
    assert eval_zs(X1, (1, 0, 0)) == 1
    assert eval_zs(X1, (1, 1, 0)) == 0


def test_assignment_length_checked():
    with pytest.raises(BadParameter):
        eval_det(X1, (1, 0))


def test_eval_matches_naive_walker(rng):
    for _ in range(60):
        n = rng.randint(1, 10)
        bp = random_program(rng, n, rng.randint(2, 30))
        for bits in all_assignments(n) if n <= 6 else (
                tuple(rng.randint(0, 1) for _ in range(n)) for _ in range(200)):
            assert eval_det(bp, bits) == naive_det(bp, bits)
            assert eval_zs(bp, bits) == naive_zs(bp, bits)


def test_truth_table_examples():
    assert str(truth_table(BranchingProgram(2, {0: Sink(1)}, 0), "det")) == "1111"
    assert str(truth_table(BranchingProgram(2, {0: Sink(1)}, 0), "zs")) == "1000"


def test_truth_table_matches_pointwise_eval(rng):
    for _ in range(40):
        n = rng.randint(1, 10)
        bp = random_program(rng, n, rng.randint(2, 30))
        for sem in ("det", "zs"):
            assert str(truth_table(bp, sem)) == naive_table(bp, sem)


def test_truth_table_cap():
    with pytest.raises(TooManyVariables):
        truth_table(BranchingProgram(21, {0: Sink(1)}, 0))
    with pytest.raises(TooManyVariables):
        truth_table(BranchingProgram(6, {0: Sink(1)}, 0), cap=5)


def test_zs_one_implies_det_one(rng):
    for _ in range(50):
        n = rng.randint(1, 8)
        bp = random_program(rng, n, rng.randint(2, 30))
        det, zs = truth_table(bp, "det").bits, truth_table(bp, "zs").bits
        assert np.all(zs <= det)


def test_full_paths_make_semantics_agree():
    # every path to the 1-sink queries x1, x2, x3
    nodes = {0: Sink(0), 1: Sink(1), 2: Inner(3, 0, 1), 3: Inner(2, 2, 2),
             4: Inner(1, 3, 0)}
    bp = BranchingProgram(3, nodes, 4)
    assert truth_table(bp, "det") == truth_table(bp, "zs")


def test_is_read_once_examples():
    assert is_read_once(X1)
    chain = BranchingProgram(2, {0: Sink(0), 1: Sink(1), 2: Inner(1, 0, 1),
                                 3: Inner(1, 2, 2)}, 3)
    assert not is_read_once(chain)


def test_is_read_once_ignores_unreachable_nodes():
    nodes = {0: Sink(0), 1: Sink(1), 2: Inner(1, 0, 1), 3: Inner(1, 2, 2)}
    assert is_read_once(BranchingProgram(2, nodes, 2))


def test_is_read_once_matches_path_enumeration(rng):
    for _ in range(300):
        n = rng.randint(1, 4)
        bp = random_program(rng, n, rng.randint(2, 20))
        assert is_read_once(bp) == read_once_by_paths(bp)
    for _ in range(50):
        bp = random_read_once_program(rng, rng.randint(1, 6), rng.randint(2, 20))
        assert is_read_once(bp) and read_once_by_paths(bp)


def test_size_counts_sinks():
    assert size(BranchingProgram(1, {0: Sink(1)}, 0)) == 1
    assert size(X1) == 3


def test_gen_family():
    assert str(gen_family("const1", 3)) == "11111111"
    assert str(gen_family("and-neg", 3)) == "10000000"
    # 100, 010, 001 are indices 1, 2, 4
    assert str(gen_family("exactly-k", 3, 1)) == "01101000"


@pytest.mark.parametrize("args", [("const1", 0), ("exactly-k", 3), ("exactly-k", 3, 4),
                                  ("and-neg", 3, 1), ("bogus", 3)])
def test_gen_family_bad_parameters(args):
    with pytest.raises(BadParameter):
        gen_family(*args)


def test_bp_format_round_trip(rng):
    for _ in range(20):
        bp = random_program(rng, rng.randint(1, 6), rng.randint(2, 20))
        assert parse_bp(format_bp(bp)) == bp


def test_parse_bp_with_comments():
    text = """# x1 alone
    vars 3
    sink 0 0
    sink 1 1   # accept
    inner 2 1 0 1
    start 2
    """
    assert parse_bp(text) == X1


@pytest.mark.parametrize("text", ["sink 0 1\nstart 0\n", "vars 1\nsink 0 1\n",
                                  "vars 1\nsink 0 1\nsink 0 0\nstart 0\n",
                                  "vars 1\nleaf 0 1\nstart 0\n",
                                  "vars 1\ninner 1 1 0 0\nstart 1\n"])
def test_parse_bp_rejects_bad_files(text):
    with pytest.raises(ValueError):
        parse_bp(text)


def test_truth_table_serialization():
    tt = gen_family("exactly-k", 3, 1)
    assert tt.dumps() == "vars 3\n01101000\n"
    assert TruthTable.loads(tt.dumps()) == tt
    with pytest.raises(BadParameter):
        TruthTable(2, [1, 0, 1])


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6), nodes=st.integers(2, 25))
def test_table_consistency_property(seed, n, nodes):
    bp = random_program(random.Random(seed), n, nodes)
    for sem, fn in (("det", eval_det), ("zs", eval_zs)):
        tt = truth_table(bp, sem)
        assert [tt[i] for i in range(1 << n)] == [fn(bp, i) for i in range(1 << n)]
