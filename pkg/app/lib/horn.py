"""Horn formulas: forward-chaining entailment and the subset questions built on it."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, AbstractSet, Deque, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .cnf.models import Clause, Formula, Literal
from .errors import PreconditionError, UnknownClauseError
from .reports import RedundancyReport, Verdict

if TYPE_CHECKING:
    from .exact_search import SearchBudget, SizeResult

logger = logging.getLogger("clausetrim.horn")

HORN_REGIME = "horn"


class HornOracle:
    """Counter-based forward chaining over the clauses of a Horn formula.

    Clause ``-q1 | ... | -qk | p`` fires once every body atom ``q`` is true and then makes
    ``p`` true; a clause without a head derives the contradiction.
    """

    def __init__(self, formula: Formula) -> None:
        if not formula.kind.is_horn:
            raise PreconditionError("formula is not Horn", condition="horn")
        self.formula = formula
        self._heads: Dict[int, Optional[int]] = {}
        self._bodies: Dict[int, Tuple[int, ...]] = {}
        self._watch: Dict[int, List[int]] = {}
        for clause in formula.clauses:
            heads = [literal.var for literal in clause.lits if literal.positive]
            self._heads[clause.id] = heads[0] if heads else None
            body = tuple(literal.var for literal in clause.lits if not literal.positive)
            self._bodies[clause.id] = body
            for var in body:
                self._watch.setdefault(var, []).append(clause.id)

    def chain(
        self,
        facts: Iterable[int] = (),
        goals: AbstractSet[int] = frozenset(),
        excluded: AbstractSet[int] = frozenset(),
    ) -> Tuple[bool, FrozenSet[int]]:
        """Run to fixed point; returns (contradiction reached, atoms made true)."""
        remaining = {cid: len(body) for cid, body in self._bodies.items() if cid not in excluded}
        true: Set[int] = set()
        queue: Deque[int] = deque()
        contradiction = False

        def make_true(var: int) -> None:
            if var not in true:
                true.add(var)
                queue.append(var)

        for cid, count in remaining.items():
            if count == 0:
                head = self._heads[cid]
                if head is None:
                    return True, frozenset(true)
                make_true(head)
        for var in facts:
            make_true(var)

        while queue and not contradiction:
            var = queue.popleft()
            if var in goals:
                contradiction = True
                break
            for cid in self._watch.get(var, ()):
                if cid not in remaining:
                    continue
                remaining[cid] -= 1
                if remaining[cid] == 0:
                    head = self._heads[cid]
                    if head is None:
                        contradiction = True
                        break
                    make_true(head)
        return contradiction, frozenset(true)

    def is_consistent(self, excluded: AbstractSet[int] = frozenset()) -> bool:
        return not self.chain(excluded=excluded)[0]

    def entails_clause(self, clause: Iterable[Literal], excluded: AbstractSet[int] = frozenset()) -> bool:
        literals = list(clause.lits) if isinstance(clause, Clause) else list(clause)
        facts = [literal.var for literal in literals if not literal.positive]
        goals = frozenset(literal.var for literal in literals if literal.positive)
        return self.chain(facts, goals, excluded)[0]

    def entails_literal(self, literal: Literal, excluded: AbstractSet[int] = frozenset()) -> bool:
        return self.entails_clause([literal], excluded)

    def least_model(self) -> FrozenSet[int]:
        contradiction, true = self.chain()
        if contradiction:
            raise PreconditionError("inconsistent Horn formula has no least model", condition="consistent")
        return true


def horn_entails(formula: Formula, clause: Iterable[Literal]) -> bool:
    return HornOracle(formula).entails_clause(clause)


def horn_is_consistent(formula: Formula) -> bool:
    return HornOracle(formula).is_consistent()


def horn_implied_atoms(formula: Formula) -> FrozenSet[int]:
    return HornOracle(formula).least_model()


def horn_redundancy(formula: Formula) -> RedundancyReport:
    oracle = HornOracle(formula)
    per_clause: Dict[int, Verdict] = {}
    for clause in formula.clauses:
        redundant = oracle.entails_clause(clause, excluded={clause.id})
        per_clause[clause.id] = Verdict.REDUNDANT if redundant else Verdict.IRREDUNDANT
    report = RedundancyReport(
        per_clause=per_clause,
        regime=HORN_REGIME,
        sources={cid: "horn_chaining" for cid in per_clause},
    )
    logger.debug(
        "horn.redundancy.done",
        extra={"clauses": formula.m, "redundant": len(report.redundant_ids())},
    )
    return report


@dataclass(frozen=True)
class HornIesBasics:
    in_all: Dict[int, bool]
    unique: bool


def horn_ies_basics(formula: Formula) -> HornIesBasics:
    report = horn_redundancy(formula)
    in_all = {cid: verdict is Verdict.IRREDUNDANT for cid, verdict in report.per_clause.items()}
    kept = frozenset(cid for cid, flag in in_all.items() if flag)
    excluded = formula.ids - kept
    oracle = HornOracle(formula)
    unique = all(oracle.entails_clause(formula.clause(cid), excluded=excluded) for cid in sorted(excluded))
    return HornIesBasics(in_all=in_all, unique=unique)


def horn_is_ies(formula: Formula, ids: Iterable[int]) -> bool:
    chosen = frozenset(ids)
    for cid in chosen:
        if cid not in formula.ids:
            raise UnknownClauseError(f"clause {cid} is not in the formula", clause_id=cid)
    oracle = HornOracle(formula)
    excluded = formula.ids - chosen
    if not all(oracle.entails_clause(formula.clause(cid), excluded=excluded) for cid in sorted(excluded)):
        return False
    return not any(
        oracle.entails_clause(formula.clause(cid), excluded=excluded | {cid}) for cid in sorted(chosen)
    )


def horn_min_ies_size(formula: Formula, budget: Optional["SearchBudget"] = None) -> "SizeResult":
    """Exact minimum I.E.S. of a Horn formula, counted in whole clauses via ``SizeResult.clauses``."""
    from .exact_search import min_ies_size_exact

    if not formula.kind.is_horn:
        raise PreconditionError("formula is not Horn", condition="horn")
    return min_ies_size_exact(formula, budget, prefer_horn=True)
