"""Command-line interface: ``zsbp <subcommand> ...``.

Exit status is 0 on success, 1 on any model error or failed check (with a
one-line diagnostic on stderr), and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .barrington import barrington
from .circuit import (circuit_table, compile_report, format_circ, parse_circ)
from .core import (BadParameter, Semantics, TruthTable, ZsbpError, format_bp,
                   gen_family, is_read_once, parse_bp, truth_table, evaluate)
from .dot import circuit_to_dot, program_to_dot
from .dtree import d_complexity, z_complexity
from .formula import (Const, Formula, exactly_k_dnf, exactly_k_zsup, format_formula_file,
                      formula_size, formula_table, parse_formula_file)
from .randgen import exactly_k_program
from .transforms import det_to_zs, prune, ro_det_to_zs, ro_zs_to_det

VERIFY_CAP = 12


class CheckFailed(ZsbpError):
    pass


def _read(path):
    return Path(path).read_text()


def _write(path, text):
    Path(path).write_text(text)


def _load_bp(path):
    return parse_bp(_read(path))


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _parse_assignment(text, n):
    text = text.strip()
    if len(text) != n or any(c not in "01" for c in text):
        raise BadParameter(f"assignment must be {n} characters of 0/1 (x1 first), got {text!r}")
    return [int(c) for c in text]


def cmd_eval(args):
    bp = _load_bp(args.input)
    print(evaluate(bp, _parse_assignment(args.assignment, bp.n), args.semantics))


def cmd_table(args):
    print(truth_table(_load_bp(args.input), args.semantics))


_CONVERSIONS = {
    "det2zs": (det_to_zs, Semantics.DET, Semantics.ZS),
    "ro-det2zs": (ro_det_to_zs, Semantics.DET, Semantics.ZS),
    "ro-zs2det": (ro_zs_to_det, Semantics.ZS, Semantics.DET),
}


def cmd_convert(args):
    bp = _load_bp(args.input)
    fn, src_sem, dst_sem = _CONVERSIONS[args.mode]
    out = fn(bp)
    if args.prune:
        out = prune(out)
    status = "not verified"
    if not args.no_verify and bp.n <= VERIFY_CAP:
        if truth_table(out, dst_sem) != truth_table(bp, src_sem):
            raise CheckFailed(f"{args.mode}: output does not match input")
        status = "verified"
    _write(args.output, format_bp(out))
    print(f"{args.mode}: {len(bp)} -> {len(out)} nodes, {status}")


def cmd_compile(args):
    bp = _load_bp(args.input)
    circuit, report = compile_report(bp)
    if not args.no_verify and bp.n <= VERIFY_CAP:
        if circuit_table(circuit) != truth_table(bp, Semantics.ZS):
            raise CheckFailed("compile: circuit does not match the zero-suppressed program")
    _write(args.output, format_circ(circuit))
    if args.report:
        print("\n".join(report.lines()))


def cmd_barrington(args):
    f = parse_formula_file(_read(args.formula))
    bp = barrington(f)
    if not args.no_verify and f.n <= VERIFY_CAP:
        if truth_table(bp) != formula_table(f):
            raise CheckFailed("barrington: program does not match the formula")
    _write(args.output, format_bp(bp))
    print(f"barrington: {len(bp)} nodes")


def cmd_complexity(args):
    tt = TruthTable.from_string(args.table, args.vars)
    measure = d_complexity if args.measure == "d" else z_complexity
    result = measure(tt)
    if args.witness:
        _write(args.witness, format_bp(result.witness.program))
    print(f"{args.measure.upper()} = {result.value}")


def cmd_check(args):
    bp = _load_bp(args.input)
    if args.read_once:
        ok = is_read_once(bp)
        print(f"read-once: {'yes' if ok else 'no'}")
        if not ok:
            raise CheckFailed("program is not read-once")
        return
    other = _load_bp(args.equiv)
    other_sem = args.other_semantics or args.semantics
    if bp.n != other.n:
        raise CheckFailed(f"variable counts differ: {bp.n} vs {other.n}")
    ok = truth_table(bp, args.semantics) == truth_table(other, other_sem)
    print(f"equivalent: {'yes' if ok else 'no'}")
    if not ok:
        raise CheckFailed("programs are not equivalent")


def cmd_gen(args):
    family, n = args.family, args.vars
    if family == "exactly-k" and args.k is None:
        raise BadParameter("exactly-k needs --k")
    if family != "exactly-k" and args.k is not None:
        raise BadParameter(f"{family} takes no --k")
    # and-neg is exactly-0
    k = 0 if family == "and-neg" else args.k
    if args.as_dnf or args.as_zsup:
        if family == "const1":
            f = Formula(Const(1), n)
        else:
            f = (exactly_k_zsup if args.as_zsup else exactly_k_dnf)(n, k)
        text = format_formula_file(f)
    elif args.as_bp:
        if family == "const1":
            raise BadParameter("--as-bp is not available for const1")
        text = format_bp(exactly_k_program(n, k))
    else:
        text = gen_family(family, n, args.k).dumps()
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)


def cmd_export_dot(args):
    text = _read(args.input)
    first = next((ln.split()[0] for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), "")
    if first == "inputs":
        dot = circuit_to_dot(parse_circ(text))
    else:
        dot = program_to_dot(parse_bp(text))
    _write(args.output, dot)


def bench_rows(ns, k):
    header = ["n", "k", "dnf", "zsup", "bp", "det2zs", "ro_det2zs", "circ_size",
              "circ_depth", "D", "Z"]
    rows = [header]
    for n in ns:
        kk = min(k, n)
        bp = exactly_k_program(n, kk)
        _, report = compile_report(det_to_zs(bp))
        tt = gen_family("exactly-k", n, kk)
        d = d_complexity(tt).value if n <= 5 else "-"
        z = z_complexity(tt).value if n <= 5 else "-"
        rows.append([n, kk, formula_size(exactly_k_dnf(n, kk)),
                     formula_size(exactly_k_zsup(n, kk)), len(bp), len(det_to_zs(bp)),
                     len(ro_det_to_zs(bp)), report.size, report.depth, d, z])
    return rows


def cmd_bench(args):
    if args.family != "exactly-k":
        raise BadParameter("bench supports only --family exactly-k")
    rows = bench_rows(_parse_range(args.vars), args.k)
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    for row in rows:
        print("  ".join(str(v).rjust(w) for v, w in zip(row, widths)))


def build_parser():
    parser = argparse.ArgumentParser(prog="zsbp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sem = dict(choices=["det", "zs"], default="det")

    p = sub.add_parser("eval", help="evaluate a program on one assignment")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--semantics", **sem)
    p.add_argument("--assignment", required=True, help="bits x1..xn, x1 first")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="print the truth table, index 0 first")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--semantics", **sem)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("convert", help="convert between semantics")
    p.add_argument("--mode", choices=sorted(_CONVERSIONS), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--prune", action="store_true", help="drop unreachable nodes")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("compile", help="compile a zero-suppressed program to a circuit")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--report", action="store_true")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("barrington", help="width-5 program for a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_barrington)

    p = sub.add_parser("complexity", help="exact D(f) or Z(f)")
    p.add_argument("--measure", choices=["d", "z"], required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--witness")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("check", help="read-once or equivalence check")
    p.add_argument("--in", dest="input", required=True)
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--read-once", action="store_true")
    what.add_argument("--equiv", metavar="OTHER")
    p.add_argument("--semantics", **sem)
    p.add_argument("--other-semantics", choices=["det", "zs"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a named function")
    p.add_argument("--family", choices=["const1", "and-neg", "exactly-k"], required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--k", type=int)
    form = p.add_mutually_exclusive_group()
    form.add_argument("--as-table", action="store_true")
    form.add_argument("--as-dnf", action="store_true")
    form.add_argument("--as-zsup", action="store_true")
    form.add_argument("--as-bp", action="store_true")
    p.add_argument("--out", dest="output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-dot", help="Graphviz export of a .bp or .circ file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("bench", help="size/depth comparison across representations")
    p.add_argument("--family", default="exactly-k")
    p.add_argument("--vars", default="2..8")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ZsbpError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


run = main

if __name__ == "__main__":
    sys.exit(main())
