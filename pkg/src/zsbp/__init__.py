"""Deterministic and zero-suppressed branching programs."""
from .circuit import (Circuit, circuit_table, compile_zs_to_circuit,
                      eval_circuit, levelize_zs)
from .core import (BranchingProgram, Inner, Semantics, Sink, TruthTable,
                   ZsbpError, eval_det, eval_zs, gen_family, is_read_once,
                   parse_bp, format_bp, size, truth_table, validate)
from .dtree import d_complexity, z_complexity
from .formula import Formula, eval_formula, formula_table, parse_formula
from .transforms import det_to_zs, normalize_path_sets, ro_det_to_zs, ro_zs_to_det

__version__ = "0.1.0"

__all__ = [
    "BranchingProgram", "Inner", "Sink", "Semantics", "TruthTable", "ZsbpError",
    "validate", "eval_det", "eval_zs", "truth_table", "is_read_once", "size",
    "gen_family", "parse_bp", "format_bp", "d_complexity", "z_complexity",
    "det_to_zs", "normalize_path_sets", "ro_det_to_zs", "ro_zs_to_det",
    "Circuit", "levelize_zs", "compile_zs_to_circuit", "eval_circuit",
    "circuit_table", "Formula", "parse_formula", "eval_formula",
    "formula_table",
]
