from __future__ import annotations

import logging
from typing import Optional

from ..cnf.models import Formula
from ..entailment import EntailmentOracle, classify_with
from ..errors import SearchExhausted
from ..exact_search import SearchBudget, enumerate_ies
from ..horn import HORN_REGIME, horn_ies_basics
from ..implication_graph import CycleStatus
from ..redundancy import check
from ..reports import Regime
from .construct import greedy_ies, ies_consistent_acyclic
from .models import IesReport, Membership
from .presence import in_some_ies_acyclic_inconsistent, in_some_ies_noncycle_clause
from .sizes import min_inconsistent_size_acyclic
from .verify import has_unique_ies, is_ies

logger = logging.getLogger("clausetrim.ies")

NOT_APPLICABLE = "not_applicable"


def _uses_horn(formula: Formula, prefer_horn: bool) -> bool:
    return not formula.kind.is_binary or (prefer_horn and formula.kind.is_horn)


def _horn_report(formula: Formula) -> IesReport:
    basics = horn_ies_basics(formula)
    kept = frozenset(cid for cid, flag in basics.in_all.items() if flag)
    result = IesReport(regime=HORN_REGIME, cyclic=NOT_APPLICABLE, unique=basics.unique)
    if basics.unique:
        result.ies = kept
        result.min_size_half_units = 2 * len(kept)
        result.membership = {cid: Membership.IN_ALL if cid in kept else Membership.IN_NONE for cid in formula.ids}
        return result
    result.membership = {cid: Membership.IN_ALL if cid in kept else Membership.NEEDS_SEARCH for cid in formula.ids}
    result.ies = greedy_ies(formula, prefer_horn=True)
    return result


def _binary_report(formula: Formula, max_cycles: Optional[int]) -> IesReport:
    oracle = EntailmentOracle(formula)
    cls = classify_with(oracle, max_cycles=max_cycles)
    redundancy = check(formula, cls=cls, oracle=oracle)
    kept = redundancy.irredundant_ids()
    unique = has_unique_ies(formula, report=redundancy)
    result = IesReport(regime=cls.regime.value, cyclic=cls.cyclicity.status.value, unique=unique)

    if unique:
        result.ies = kept
        result.min_size_half_units = 2 * len(kept)
        result.membership = {cid: Membership.IN_ALL if cid in kept else Membership.IN_NONE for cid in formula.ids}
        return result

    if cls.consistent and cls.cyclicity.is_acyclic:
        result = ies_consistent_acyclic(formula, oracle=oracle, cls=cls)
        result.unique = unique
    else:
        result.membership = {
            cid: Membership.IN_ALL if cid in kept else Membership.NEEDS_SEARCH for cid in formula.ids
        }
        undecided = sorted(formula.ids - kept)
        if not cls.consistent and cls.cyclicity.is_acyclic:
            size = min_inconsistent_size_acyclic(formula, oracle=oracle, cls=cls)
            result.min_size_half_units = size.half_units
            if size.witness_half_units == size.half_units and is_ies(formula, size.ids):
                result.ies = size.ids
            for cid in undecided:
                present = in_some_ies_acyclic_inconsistent(formula, cid, oracle=oracle, cls=cls)
                result.membership[cid] = Membership.IN_SOME if present else Membership.IN_NONE
        elif cls.consistent:
            for cid in undecided:
                if formula.clause(cid).is_unit:
                    continue
                present = in_some_ies_noncycle_clause(formula, cid, oracle=oracle, cls=cls)
                if present is not None:
                    result.membership[cid] = Membership.IN_SOME if present else Membership.IN_NONE

    if result.ies is None:
        result.ies = greedy_ies(formula)
    return result


def _resolve_by_search(
    formula: Formula, result: IesReport, budget: Optional[SearchBudget], prefer_horn: bool
) -> None:
    try:
        found = enumerate_ies(formula, budget, prefer_horn=prefer_horn)
    except SearchExhausted as exc:
        logger.warning(
            "ies.report.search_exhausted",
            extra={"reason": exc.reason, "nodes": exc.nodes, "undecided": len(result.undecided())},
        )
        return
    result.exact_used = True
    for cid in result.undecided():
        count = sum(1 for ids in found if cid in ids)
        if count == len(found):
            result.membership[cid] = Membership.IN_ALL
        else:
            result.membership[cid] = Membership.IN_SOME if count else Membership.IN_NONE
    if result.min_size_half_units is None:
        smallest = min(found, key=lambda ids: (len(ids), sorted(ids)))
        result.min_size_half_units = 2 * len(smallest)


def report(
    formula: Formula,
    budget: Optional[SearchBudget] = None,
    *,
    search: bool = True,
    prefer_horn: bool = False,
    max_cycles: Optional[int] = None,
) -> IesReport:
    """Answer every I.E.S. question with a polynomial procedure where one applies, and
    settle the remaining ones by exact search when ``search`` is set and the budget allows."""
    if formula.m == 0:
        return IesReport(
            regime=Regime.CONSISTENT_NO_IMPLIED.value,
            cyclic=CycleStatus.ACYCLIC.value,
            ies=frozenset(),
            min_size_half_units=0,
            unique=True,
        )
    if _uses_horn(formula, prefer_horn):
        result = _horn_report(formula)
    else:
        result = _binary_report(formula, max_cycles)
    if search and result.needs_search:
        _resolve_by_search(formula, result, budget, prefer_horn)
    logger.info(
        "ies.report.done",
        extra={
            "regime": result.regime,
            "clauses": formula.m,
            "needs_search": result.needs_search,
            "exact_used": result.exact_used,
        },
    )
    return result
