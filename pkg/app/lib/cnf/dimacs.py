"""DIMACS CNF reading and writing.

Comment lines start with ``c``; a ``%`` line ends the clause section (SATLIB files
carry one). Clauses are whitespace-separated signed integers terminated by ``0`` and
may span lines. Variables are renumbered densely in ascending original order.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, TextIO, Tuple, Union

from ..errors import DimacsParseError
from .models import Clause, Formula, canonicalize

logger = logging.getLogger("clausetrim.cnf")


@dataclass(frozen=True)
class ParsedDimacs:
    formula: Formula
    warnings: Tuple[str, ...] = ()
    line_map: Dict[int, int] = field(default_factory=dict)


def _read_header(tokens: List[str], line_no: int) -> Tuple[int, int]:
    if len(tokens) != 4 or tokens[1] != "cnf":
        raise DimacsParseError("malformed header, expected 'p cnf <vars> <clauses>'", line=line_no)
    try:
        declared_vars, declared_clauses = int(tokens[2]), int(tokens[3])
    except ValueError:
        raise DimacsParseError("header counts must be integers", line=line_no) from None
    if declared_vars < 0 or declared_clauses < 0:
        raise DimacsParseError("header counts must be non-negative", line=line_no)
    return declared_vars, declared_clauses


def read_dimacs(source: Union[str, TextIO]) -> ParsedDimacs:
    stream = io.StringIO(source) if isinstance(source, str) else source
    header: Optional[Tuple[int, int]] = None
    rows: List[List[int]] = []
    row_lines: List[int] = []
    current: List[int] = []
    current_line = 0

    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise DimacsParseError("second header line", line=line_no)
            header = _read_header(tokens, line_no)
            continue
        if header is None:
            raise DimacsParseError("clause data before the 'p cnf' header", line=line_no)
        for token in tokens:
            try:
                value = int(token)
            except ValueError:
                raise DimacsParseError(f"unexpected token {token!r}", line=line_no) from None
            if value == 0:
                if not current:
                    raise DimacsParseError("empty clause", line=line_no)
                if any(-literal in current for literal in current):
                    raise DimacsParseError(
                        f"tautological clause {' '.join(map(str, current))}", line=current_line
                    )
                rows.append(current)
                row_lines.append(current_line)
                current = []
                continue
            if abs(value) > header[0]:
                raise DimacsParseError(
                    f"variable {abs(value)} exceeds declared count {header[0]}", line=line_no
                )
            if not current:
                current_line = line_no
            current.append(value)

    if header is None:
        raise DimacsParseError("missing 'p cnf' header", line=None)
    if current:
        raise DimacsParseError("last clause is not terminated by 0", line=current_line)

    warnings: List[str] = []
    if len(rows) != header[1]:
        warnings.append(f"header declares {header[1]} clauses, found {len(rows)}")

    used = sorted({abs(value) for row in rows for value in row})
    dense = {original: index + 1 for index, original in enumerate(used)}
    dense_rows = [[dense[abs(v)] if v > 0 else -dense[abs(v)] for v in row] for row in rows]

    canonical = canonicalize(dense_rows)
    for row_index in canonical.duplicates:
        warnings.append(
            f"duplicate clause on line {row_lines[row_index]} merged into clause {canonical.row_ids[row_index]}"
        )
    clauses = tuple(Clause(index + 1, lits) for index, lits in enumerate(canonical.clauses))
    try:
        formula = Formula(clauses, num_vars=len(used), names=tuple(used))
    except ValueError as exc:
        raise DimacsParseError(str(exc), line=None) from None

    line_map = {row_lines[row_index]: clause_id for row_index, clause_id in enumerate(canonical.row_ids)}
    for message in warnings:
        logger.warning("cnf.dimacs.warning", extra={"detail": message})
    return ParsedDimacs(formula=formula, warnings=tuple(warnings), line_map=line_map)


def parse_dimacs(source: Union[str, TextIO]) -> Formula:
    return read_dimacs(source).formula


def emit_dimacs(formula: Formula) -> str:
    """One clause per line in canonical order, original variable numbers."""
    declared = max(formula.names, default=0) if formula.m else 0
    lines = [f"p cnf {declared} {formula.m}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(formula.name_of(literal)) for literal in clause.lits) + " 0")
    return "\n".join(lines) + "\n"
