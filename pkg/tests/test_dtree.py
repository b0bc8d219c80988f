import random

import pytest

from zsbp.core import TooManyVariables, TruthTable, gen_family, is_read_once
from zsbp.dtree import d_complexity, eval_witness, tree_depth, z_complexity

from conftest import brute_complexity


def bits(tt):
    return [int(b) for b in tt.bits]


@pytest.mark.parametrize("n", range(1, 6))
def test_gap_functions(n):
    const1 = gen_family("const1", n)
    andneg = gen_family("and-neg", n)
    assert d_complexity(const1).value == 0
    assert z_complexity(const1).value == n
    assert d_complexity(andneg).value == n
    assert z_complexity(andneg).value == 0


def test_exactly_one_of_three():
    # frozen from the unmemoized tree search in conftest.brute_complexity
    tt = gen_family("exactly-k", 3, 1)
    assert d_complexity(tt).value == 3
    assert z_complexity(tt).value == 3
    assert brute_complexity(bits(tt), 3, "det") == 3
    assert brute_complexity(bits(tt), 3, "zs") == 3


def test_zero_suppressed_single_literal():
    # x1 & !x2 & !x3 is one query deep under zero suppression
    tt = TruthTable.from_function(3, lambda x: x == (1, 0, 0))
    assert z_complexity(tt).value == 1
    assert d_complexity(tt).value == 3


def test_witnesses_for_gap_functions():
    w = z_complexity(gen_family("const1", 3)).witness
    assert str(eval_witness(w, "zs")) == "11111111"
    andneg = gen_family("and-neg", 3)
    assert eval_witness(d_complexity(andneg), "det") == andneg


def test_witness_tie_break_lowest_variable_first():
    w = d_complexity(gen_family("and-neg", 2)).witness.program
    root = w.nodes[w.start]
    assert root.var == 1
    # 0-branch built first, so it gets the smaller id
    assert root.lo < root.hi


def test_cap():
    with pytest.raises(TooManyVariables):
        d_complexity(gen_family("const1", 6))
    assert z_complexity(gen_family("const1", 6), cap=6).value == 6


def random_table(rng, n):
    return TruthTable(n, [rng.randint(0, 1) for _ in range(1 << n)])


def test_witnesses_reproduce_random_functions(rng):
    for _ in range(60):
        n = rng.randint(1, 4)
        tt = random_table(rng, n)
        for measure, sem in ((d_complexity, "det"), (z_complexity, "zs")):
            result = measure(tt)
            assert eval_witness(result, sem) == tt
            assert result.witness.depth == result.value
            assert 0 <= result.value <= n
            assert is_read_once(result.witness.program)


def test_memoized_matches_brute_force(rng):
    for n in (1, 2, 3):
        for _ in range(25):
            tt = random_table(rng, n)
            assert d_complexity(tt).value == brute_complexity(bits(tt), n, "det")
            assert z_complexity(tt).value == brute_complexity(bits(tt), n, "zs")


def test_memoized_matches_brute_force_n4():
    rng = random.Random(4)
    for _ in range(8):
        tt = random_table(rng, 4)
        assert d_complexity(tt).value == brute_complexity(bits(tt), 4, "det")
        assert z_complexity(tt).value == brute_complexity(bits(tt), 4, "zs")


def test_all_functions_of_two_variables():
    # exhaustive: the repeat-free search space loses nothing
    for code in range(16):
        tt = TruthTable(2, [(code >> i) & 1 for i in range(4)])
        assert d_complexity(tt).value == brute_complexity(bits(tt), 2, "det")
        assert z_complexity(tt).value == brute_complexity(bits(tt), 2, "zs")


def test_tree_depth_rejects_dag():
    from zsbp.core import BranchingProgram, Inner, ProgramError, Sink
    bp = BranchingProgram(2, {0: Sink(0), 1: Sink(1), 2: Inner(2, 0, 1),
                              3: Inner(1, 2, 2)}, 3)
    with pytest.raises(ProgramError):
        tree_depth(bp)
