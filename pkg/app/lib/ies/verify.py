"""Checks on candidate subsets: I.E.S. verification, Property 1/2 style questions and
structural bounds every I.E.S. obeys."""

from __future__ import annotations

from typing import FrozenSet, Iterable, List, Optional, Union

from ..cnf.models import Clause, Formula
from ..entailment import EntailmentOracle, oracle_for
from ..errors import UnknownClauseError
from ..horn import horn_is_ies
from ..redundancy import ClauseRef, check, inconsistent_size_bound, is_clause_redundant
from ..reports import RedundancyReport


def _subset_ids(formula: Formula, ids: Iterable[int]) -> FrozenSet[int]:
    chosen = frozenset(ids)
    for clause_id in sorted(chosen - formula.ids):
        raise UnknownClauseError(f"clause {clause_id} is not in the formula", clause_id=clause_id)
    return chosen


def is_ies(formula: Formula, ids: Iterable[int], *, prefer_horn: bool = False) -> bool:
    chosen = _subset_ids(formula, ids)
    if not formula.kind.is_binary or (prefer_horn and formula.kind.is_horn):
        return horn_is_ies(formula, chosen)
    oracle = EntailmentOracle(formula)
    dropped = formula.ids - chosen
    if not all(oracle.entails_clause(formula.clause(cid), excluded=dropped) for cid in sorted(dropped)):
        return False
    return not check(formula.subset(chosen)).redundant


def in_all_ies(formula: Formula, clause: ClauseRef, *, prefer_horn: bool = False) -> bool:
    """Irredundant clauses are exactly the ones kept by every I.E.S."""
    return not is_clause_redundant(formula, clause, prefer_horn=prefer_horn)


def has_unique_ies(
    formula: Formula,
    *,
    prefer_horn: bool = False,
    report: Optional[RedundancyReport] = None,
) -> bool:
    report = report or check(formula, prefer_horn=prefer_horn)
    kept = report.irredundant_ids()
    dropped = formula.ids - kept
    oracle = oracle_for(formula, prefer_horn=prefer_horn)
    return all(oracle.entails_clause(formula.clause(cid), excluded=dropped) for cid in sorted(dropped))


def structural_violations(formula: Formula, ids: Iterable[int]) -> List[str]:
    """Bounds broken by ``ids`` seen as an I.E.S. of a 2CNF formula; empty when none."""
    chosen = formula.subset(_subset_ids(formula, ids))
    if not chosen.kind.is_binary:
        return []
    oracle = EntailmentOracle(chosen)
    violations: List[str] = []
    if not oracle.consistent():
        bound = inconsistent_size_bound(len(chosen.variables()))
        if chosen.m > bound:
            violations.append(f"inconsistent subset has {chosen.m} clauses, bound {bound}")
        return violations
    for literal in sorted(oracle.implied_literals()):
        count = len(chosen.containing(literal))
        if count > 2:
            violations.append(f"{count} clauses contain implied literal {chosen.name_of(literal)}")
    return violations


def clause_of(formula: Formula, clause: Union[int, Clause]) -> Clause:
    return formula.find(clause.lits) if isinstance(clause, Clause) else formula.clause(clause)
