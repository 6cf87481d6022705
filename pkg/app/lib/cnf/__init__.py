from .dimacs import ParsedDimacs, emit_dimacs, parse_dimacs, read_dimacs
from .models import (
    Clause,
    Formula,
    FormulaKind,
    HornFormula,
    Literal,
    WeightedFormula,
    canonical_literals,
    lit,
)
from .units import eliminate_units, format_half_units, subset_size_half_units

__all__ = [
    "Clause",
    "Formula",
    "FormulaKind",
    "HornFormula",
    "Literal",
    "ParsedDimacs",
    "WeightedFormula",
    "canonical_literals",
    "eliminate_units",
    "emit_dimacs",
    "format_half_units",
    "lit",
    "parse_dimacs",
    "read_dimacs",
    "subset_size_half_units",
]
