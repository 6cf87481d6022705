"""Clause redundancy: the per-clause test and the whole-formula checkers per regime."""

from __future__ import annotations

import logging
import time
from typing import Dict, FrozenSet, Optional, Union

from .cnf.models import Clause, Formula, Literal
from .entailment import Classification, EntailmentOracle, classify_with, decompose, oracle_for
from .errors import PreconditionError
from .horn import horn_redundancy
from .implication_graph import ImplicationGraph, build_for, shared_successors
from .reports import RedundancyReport, Regime, Verdict

logger = logging.getLogger("clausetrim.redundancy")

ClauseRef = Union[int, Clause]


def inconsistent_size_bound(num_vars: int) -> int:
    """Most clauses an irredundant inconsistent 2CNF over ``num_vars`` variables can have."""
    return 4 * num_vars


def resolve_clause(formula: Formula, clause: ClauseRef) -> Clause:
    if isinstance(clause, Clause):
        return formula.find(clause.lits)
    return formula.clause(clause)


def _use_horn(formula: Formula, prefer_horn: bool) -> bool:
    return not formula.kind.is_binary or (prefer_horn and formula.kind.is_horn)


def is_clause_redundant(formula: Formula, clause: ClauseRef, *, prefer_horn: bool = False) -> bool:
    target = resolve_clause(formula, clause)
    oracle = oracle_for(formula, prefer_horn=prefer_horn)
    return oracle.entails_clause(target, excluded={target.id})


def naive_check(formula: Formula, *, prefer_horn: bool = False) -> RedundancyReport:
    """One entailment test per clause, whatever the regime."""
    oracle = oracle_for(formula, prefer_horn=prefer_horn)
    per_clause = {
        clause.id: Verdict.REDUNDANT if oracle.entails_clause(clause, excluded={clause.id}) else Verdict.IRREDUNDANT
        for clause in formula.clauses
    }
    return RedundancyReport(per_clause=per_clause, regime="naive", sources={cid: "direct" for cid in per_clause})


def _require(cls: Classification, regime: Regime) -> None:
    if cls.regime is not regime:
        raise PreconditionError(
            f"expected a {regime.label} formula, got {cls.regime.label}", condition=regime.value
        )


def check_inconsistent(
    formula: Formula,
    cls: Classification,
    *,
    oracle: Optional[EntailmentOracle] = None,
) -> RedundancyReport:
    """A clause of an inconsistent formula is redundant iff the rest stays inconsistent.

    Above ``4n`` clauses the formula is redundant outright. Only the clauses of one
    contradiction witness (two propagation walks, each linear in the number of variables)
    are then scanned; every other clause leaves that witness intact and is redundant.
    """
    _require(cls, Regime.INCONSISTENT)
    oracle = oracle or EntailmentOracle(formula)
    scanned = formula.ids
    if formula.m > inconsistent_size_bound(len(formula.variables())):
        scanned = _witness_clauses(oracle)
        logger.debug(
            "redundancy.inconsistent.size_bound",
            extra={"clauses": formula.m, "scanned": len(scanned)},
        )
    per_clause: Dict[int, Verdict] = {}
    sources: Dict[int, str] = {}
    for clause in formula.clauses:
        if clause.id not in scanned:
            per_clause[clause.id] = Verdict.REDUNDANT
            sources[clause.id] = "size_bound"
            continue
        still_inconsistent = not oracle.consistent({clause.id})
        per_clause[clause.id] = Verdict.REDUNDANT if still_inconsistent else Verdict.IRREDUNDANT
        sources[clause.id] = "consistency_scan"
    return RedundancyReport(per_clause=per_clause, regime=Regime.INCONSISTENT.value, sources=sources)


def _witness_clauses(oracle: EntailmentOracle) -> FrozenSet[int]:
    witness = oracle.is_consistent().witness
    assert witness is not None
    base_ids = set(witness.positive.clause_ids) | set(witness.negative.clause_ids)
    return oracle.weighted.to_source_ids(base_ids)


def check_implied_literal_clauses(
    formula: Formula,
    literal: Literal,
    *,
    oracle: Optional[EntailmentOracle] = None,
) -> Dict[int, Verdict]:
    """Verdicts for the clauses containing an implied literal.

    More than two such clauses always include a redundant one; every clause is still
    tested individually so the verdicts are complete.
    """
    oracle = oracle or EntailmentOracle(formula)
    if not oracle.consistent():
        raise PreconditionError("formula is inconsistent", condition="consistent")
    if not oracle.entails_literal(literal):
        raise PreconditionError(f"formula does not entail {literal}", condition="entails_literal")
    containing = formula.containing(literal)
    verdicts: Dict[int, Verdict] = {}
    for clause in containing:
        redundant = oracle.entails_clause(clause, excluded={clause.id})
        verdicts[clause.id] = Verdict.REDUNDANT if redundant else Verdict.IRREDUNDANT
    if len(containing) > 2 and Verdict.REDUNDANT not in verdicts.values():
        logger.warning(
            "redundancy.implied_literal.no_redundant_clause",
            extra={"literal": literal.to_int(), "clauses": len(containing)},
        )
    return verdicts


def check_no_implied(
    formula: Formula,
    cls: Optional[Classification] = None,
    *,
    graph: Optional[ImplicationGraph] = None,
) -> RedundancyReport:
    """Marked-BFS check for consistent formulas implying no literal, O(m) per literal.

    ``-l | l1`` is redundant iff ``l1`` is reached from another successor of ``l`` in the
    graph without ``l``.
    """
    if cls is not None:
        _require(cls, Regime.CONSISTENT_NO_IMPLIED)
    graph = graph or build_for(formula)
    started = time.perf_counter()
    redundant: Dict[int, bool] = {clause.id: False for clause in formula.clauses}
    for index in range(graph.size):
        if not graph.succ[index]:
            continue
        for clause_id, shared in shared_successors(graph, Literal.from_index(index)).items():
            if shared:
                redundant[clause_id] = True
    per_clause = {cid: Verdict.REDUNDANT if flag else Verdict.IRREDUNDANT for cid, flag in redundant.items()}
    logger.debug(
        "redundancy.no_implied.done",
        extra={
            "clauses": formula.m,
            "redundant": sum(redundant.values()),
            "elapsed_ms": int((time.perf_counter() - started) * 1000),
        },
    )
    return RedundancyReport(
        per_clause=per_clause,
        regime=Regime.CONSISTENT_NO_IMPLIED.value,
        sources={cid: "marked_bfs" for cid in per_clause},
    )


def _check_implying(formula: Formula, cls: Classification, oracle: EntailmentOracle) -> RedundancyReport:
    parts = decompose(formula, cls.implied)
    per_clause: Dict[int, Verdict] = {}
    sources: Dict[int, str] = {}
    for literal in sorted(cls.implied):
        for clause_id, verdict in check_implied_literal_clauses(formula, literal, oracle=oracle).items():
            per_clause[clause_id] = verdict
            sources[clause_id] = "implied_literal"
    core_report = check_no_implied(parts.core)
    per_clause.update(core_report.per_clause)
    sources.update(core_report.sources)
    return RedundancyReport(per_clause=per_clause, regime=Regime.CONSISTENT_IMPLYING.value, sources=sources)


def check(
    formula: Formula,
    *,
    prefer_horn: bool = False,
    cls: Optional[Classification] = None,
    oracle: Optional[EntailmentOracle] = None,
) -> RedundancyReport:
    if _use_horn(formula, prefer_horn):
        return horn_redundancy(formula)
    oracle = oracle or EntailmentOracle(formula)
    cls = cls or classify_with(oracle)
    if cls.regime is Regime.INCONSISTENT:
        report = check_inconsistent(formula, cls, oracle=oracle)
    elif cls.regime is Regime.CONSISTENT_NO_IMPLIED:
        report = check_no_implied(formula, cls, graph=oracle.graph)
    else:
        report = _check_implying(formula, cls, oracle)
    logger.info(
        "redundancy.check.done",
        extra={
            "regime": cls.regime.value,
            "clauses": formula.m,
            "redundant": len(report.redundant_ids()),
        },
    )
    return report


def is_redundant(formula: Formula, *, prefer_horn: bool = False) -> bool:
    """Whether the formula has any redundant clause, stopping at the first one found."""
    if _use_horn(formula, prefer_horn):
        oracle = oracle_for(formula, prefer_horn=True)
        return any(oracle.entails_clause(clause, excluded={clause.id}) for clause in formula.clauses)
    oracle = EntailmentOracle(formula)
    if not oracle.consistent():
        if formula.m > inconsistent_size_bound(len(formula.variables())):
            return True
        return any(not oracle.consistent({clause.id}) for clause in formula.clauses)
    implied = oracle.implied_literals()
    if any(len(formula.containing(literal)) > 2 for literal in implied):
        return True
    return check(formula, oracle=oracle).redundant
