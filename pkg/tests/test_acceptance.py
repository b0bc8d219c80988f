"""Exit criteria.  Each test records one PASS/FAIL line in the terminal summary.

The class-containment statements (L/poly and NC^2) quantify over whole
complexity classes and have no finite check; their constructive content is
exercised by C2 (det -> zs at arbitrary width) and C4 (the compiler).
"""
import math
import random
import time

import numpy as np

from zsbp.barrington import barrington
from zsbp.circuit import (DEPTH_C, circuit_table, compile_report,
                          compile_zs_to_circuit, levelize_zs, width_of_leveled)
from zsbp.cli import main
from zsbp.core import gen_family, is_read_once, size, truth_table
from zsbp.formula import exactly_k_dnf, formula_table, parse_formula, random_formula
from zsbp.randgen import (random_leveled_program, random_program,
                          random_read_once_program)
from zsbp.transforms import det_to_zs, ro_det_to_zs, ro_zs_to_det


def test_c1_gap_theorems(capsys, criterion):
    start = time.perf_counter()
    wrong = []
    for n in range(1, 6):
        for family, measure, expected in (("const1", "d", 0), ("const1", "z", n),
                                          ("and-neg", "d", n), ("and-neg", "z", 0)):
            table = str(gen_family(family, n))
            main(["complexity", "--measure", measure, "--table", table, "--vars", str(n)])
            got = capsys.readouterr().out.strip()
            if got != f"{measure.upper()} = {expected}":
                wrong.append((family, n, got))
    elapsed = time.perf_counter() - start
    criterion("C1 gap theorems D/Z for n=1..5", not wrong and elapsed < 60,
              f"mismatches={wrong} time={elapsed:.2f}s")


def test_c2_det_to_zs(criterion):
    rng = random.Random(2)
    start = time.perf_counter()
    bad = 0
    for _ in range(100):
        n = rng.randint(1, 8)
        bp = random_program(rng, n, rng.randint(2, 40))
        out = det_to_zs(bp)
        if size(out) != size(bp) + n or truth_table(out, "zs") != truth_table(bp, "det"):
            bad += 1
    elapsed = time.perf_counter() - start
    criterion("C2 det->zs size s+n and ZS=Det (100 programs)", bad == 0 and elapsed < 60,
              f"failures={bad} time={elapsed:.2f}s")


def test_c3_read_once_conversions(criterion):
    rng = random.Random(3)
    start = time.perf_counter()
    bad = []
    for i in range(100):
        n = rng.randint(1, 8)
        bp = random_read_once_program(rng, n, rng.randint(2, 40))
        s = size(bp)
        det, zs = truth_table(bp, "det"), truth_table(bp, "zs")
        a, b = ro_det_to_zs(bp), ro_zs_to_det(bp)
        ok = (is_read_once(a) and is_read_once(b)
              and size(a) <= s + 2 * n * s and size(b) <= s + 2 * n * s
              and truth_table(a, "zs") == det and truth_table(b, "det") == zs
              and truth_table(ro_zs_to_det(a), "det") == det)
        if not ok:
            bad.append(i)
    elapsed = time.perf_counter() - start
    criterion("C3 read-once conversions, size <= s+2ns, round trip (100 programs)",
              not bad and elapsed < 120, f"failures={bad} time={elapsed:.2f}s")


def test_c4_compiler(criterion):
    rng = random.Random(4)
    start = time.perf_counter()
    bad = 0
    for _ in range(30):
        n = rng.randint(1, 8)
        bp = random_program(rng, n, rng.randint(2, 40))
        if circuit_table(compile_zs_to_circuit(bp)) != truth_table(bp, "zs"):
            bad += 1
    sweep = [4, 8, 16, 32, 64, 128, 256]
    depths = []
    for levels in sweep:
        bp = random_leveled_program(rng, 8, levels, width=5)
        circuit, report = compile_report(bp)
        assert report.width <= 5
        if circuit_table(circuit) != truth_table(bp, "zs"):
            bad += 1
        depths.append(report.depth)
    steps = [b - a for a, b in zip(depths, depths[1:])]
    per_doubling = DEPTH_C * (math.ceil(math.log2(5)) + 1)
    slope, intercept = np.polyfit(np.log2(sweep), depths, 1)
    elapsed = time.perf_counter() - start
    criterion("C4 compiler = eval_zs (30 programs); depth +<=const per doubling of L",
              bad == 0 and max(steps) <= per_doubling and elapsed < 120,
              f"failures={bad} depths={depths} max_step={max(steps)} "
              f"constant={per_doubling} fit={slope:.2f}*log2(L)+{intercept:.2f} "
              f"time={elapsed:.2f}s")


def test_c5_width5_pipeline(criterion):
    rng = random.Random(5)
    start = time.perf_counter()
    bad = []
    widest = 0
    for i in range(50):
        n = rng.randint(1, 6)
        f = random_formula(rng, n, 6)
        bp = barrington(f)
        width = width_of_leveled(levelize_zs(bp))
        widest = max(widest, width)
        circuit = compile_zs_to_circuit(det_to_zs(bp))
        if width > 5 or circuit_table(circuit) != formula_table(f):
            bad.append(i)
    elapsed = time.perf_counter() - start
    criterion("C5 formula -> width-5 -> zs -> circuit (50 formulas)",
              not bad and elapsed < 120,
              f"failures={bad} max_width={widest} time={elapsed:.2f}s")


def test_c6_exactly_one_of_three(criterion):
    zs = formula_table(parse_formula("(Z(x1)|(Z(x2)|Z(x3)))", 3))
    dnf = formula_table(exactly_k_dnf(3, 1))
    expected = gen_family("exactly-k", 3, 1)
    criterion("C6 Z(x1)|Z(x2)|Z(x3) = DNF of E^3_1 = ExactlyK(3,1)",
              zs == dnf == expected, f"zs={zs} dnf={dnf} family={expected}")
