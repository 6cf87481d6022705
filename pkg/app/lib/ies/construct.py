"""Polynomial I.E.S. constructions for acyclic consistent formulas."""

from __future__ import annotations

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional

from ..cnf.models import Formula, Literal
from ..entailment import Classification, EntailmentOracle, classify_with, decompose, oracle_for
from ..errors import PreconditionError
from ..implication_graph import ImplicationGraph, literal_sets
from ..redundancy import check, check_no_implied
from ..reports import Regime
from .models import IesOption, IesReport, Membership
from .verify import is_ies

logger = logging.getLogger("clausetrim.ies")

_RANK = {Membership.IN_NONE: 0, Membership.NEEDS_SEARCH: 1, Membership.IN_SOME: 2, Membership.IN_ALL: 3}


def _unique_core(formula: Formula, graph: Optional[ImplicationGraph] = None) -> FrozenSet[int]:
    # in the acyclic no-implied regime the clauses kept by the marked BFS are the single I.E.S.
    return check_no_implied(formula, graph=graph).irredundant_ids()


def unique_ies_acyclic(formula: Formula, cls: Optional[Classification] = None) -> FrozenSet[int]:
    """The single I.E.S. of an acyclic formula that is consistent and implies no literal.

    Clause ``-l | l1`` is kept iff no other successor of ``l`` reaches ``l1``.
    """
    oracle = EntailmentOracle(formula)
    cls = cls or classify_with(oracle)
    if cls.regime is not Regime.CONSISTENT_NO_IMPLIED:
        raise PreconditionError(
            f"unique I.E.S. construction needs a consistent formula implying no literal, got {cls.regime.label}",
            condition=Regime.CONSISTENT_NO_IMPLIED.value,
        )
    if not cls.cyclicity.is_acyclic:
        raise PreconditionError("unique I.E.S. construction needs an acyclic formula", condition="acyclic")
    return _unique_core(formula, oracle.graph)


def greedy_ies(formula: Formula, *, prefer_horn: bool = False) -> FrozenSet[int]:
    """Deletion pass in id order: drop every clause the remaining ones still entail."""
    oracle = oracle_for(formula, prefer_horn=prefer_horn)
    dropped: set = set()
    for clause in formula.clauses:
        if oracle.entails_clause(clause, excluded=dropped | {clause.id}):
            dropped.add(clause.id)
    return formula.ids - frozenset(dropped)


def compose_ies(core_ies: Iterable[int], choices: Iterable[IesOption]) -> FrozenSet[int]:
    """I.E.S. of the core plus one chosen option per implied literal."""
    chosen = set(core_ies)
    for option in choices:
        chosen.update(option.clause_ids)
    return frozenset(chosen)


def implied_literal_options(oracle: EntailmentOracle, implied: Literal) -> List[IesOption]:
    """Ways to keep ``implied`` entailed, cheapest first.

    A single clause ``implied | x`` works when ``x`` alone propagates to a contradiction
    in the rest of the formula; a pair ``implied | x``, ``implied | y`` works when ``x``
    propagates to ``-y``.
    """
    weighted = oracle.weighted
    sets = literal_sets(oracle.graph, -implied)
    options: Dict[FrozenSet[int], IesOption] = {}
    for target in sorted(sets.refuting):
        base_id = sets.edge_clause[target]
        ids = frozenset({weighted.source_id(base_id)})
        options.setdefault(ids, IesOption(ids, weighted.weight[base_id], "single"))
    for first, second in sorted(sets.opposing_pairs):
        base_ids = (sets.edge_clause[first], sets.edge_clause[second])
        ids = weighted.to_source_ids(base_ids)
        cost = sum(weighted.weight[base_id] for base_id in base_ids)
        options.setdefault(ids, IesOption(ids, cost, "pair"))
    return sorted(options.values(), key=IesOption.sort_key)


def ies_consistent_acyclic(
    formula: Formula,
    *,
    oracle: Optional[EntailmentOracle] = None,
    cls: Optional[Classification] = None,
) -> IesReport:
    oracle = oracle or EntailmentOracle(formula)
    cls = cls or classify_with(oracle)
    if not cls.consistent:
        raise PreconditionError("formula is inconsistent", condition="consistent")
    if not cls.cyclicity.is_acyclic:
        raise PreconditionError("formula is not acyclic", condition="acyclic")

    parts = decompose(formula, cls.implied)
    core_ies = _unique_core(parts.core)
    membership: Dict[int, Membership] = {
        cid: Membership.IN_ALL if cid in core_ies else Membership.IN_NONE for cid in parts.core.ids
    }
    membership.update({cid: Membership.IN_NONE for cid in parts.touched.ids})

    per_literal: Dict[Literal, List[IesOption]] = {}
    alternatives: Dict[int, List[List[int]]] = {}
    for literal in sorted(cls.implied):
        options = implied_literal_options(oracle, literal)
        if not options:
            logger.warning("ies.construct.no_option", extra={"literal": formula.name_of(literal)})
            continue
        per_literal[literal] = options
        alternatives[formula.name_of(literal)] = [sorted(option.clause_ids) for option in options]
    chosen = [options[0] for options in per_literal.values()]

    # an option only counts once a whole I.E.S. built around it checks out
    for literal, options in per_literal.items():
        others = [first for other, first in zip(per_literal, chosen) if other != literal]
        for option in options:
            witnessed = is_ies(formula, compose_ies(core_ies, [option, *others]))
            status = Membership.IN_SOME if witnessed else Membership.NEEDS_SEARCH
            for cid in option.clause_ids:
                if _RANK[status] > _RANK[membership[cid]]:
                    membership[cid] = status
    # a clause is in every I.E.S. iff it is irredundant
    for cid in check(formula, cls=cls, oracle=oracle).irredundant_ids():
        membership[cid] = Membership.IN_ALL

    ies = compose_ies(core_ies, chosen)
    report = IesReport(
        regime=cls.regime.value,
        cyclic=cls.cyclicity.status.value,
        ies=ies,
        min_size_half_units=2 * len(ies),
        membership=membership,
        alternatives=alternatives,
    )
    if not is_ies(formula, ies):
        logger.warning(
            "ies.construct.validation_failed",
            extra={"regime": cls.regime.value, "clauses": formula.m, "ies": sorted(ies)},
        )
        report.ies = None
        report.min_size_half_units = None
        for cid in parts.touched.ids:
            if membership[cid] is Membership.IN_NONE:
                membership[cid] = Membership.NEEDS_SEARCH
    logger.debug(
        "ies.construct.done",
        extra={"clauses": formula.m, "core_ies": len(core_ies), "implied": len(cls.implied)},
    )
    return report
