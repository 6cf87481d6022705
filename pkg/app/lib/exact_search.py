"""Exhaustive and branch-and-bound search over clause subsets.

This is the ground truth for every polynomial procedure and the solver for the cases that
have none. Clauses irredundant in the input are in every I.E.S., so only the remaining
(undecided) clauses are branched on and ``SearchBudget.max_clauses`` caps their number.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import numpy as np

from .cnf.models import Clause, Formula
from .entailment import oracle_for
from .errors import ClauseTrimError, PreconditionError, SearchExhausted
from .redundancy import check

logger = logging.getLogger("clausetrim.search")

MAX_TABLE_VARS = 16
ORIGINAL_CLAUSE_WEIGHT = 2


@dataclass(frozen=True)
class SearchBudget:
    max_clauses: int = 24
    max_nodes: int = 200_000
    time_cap: float = 60.0


@dataclass(frozen=True)
class SizeResult:
    half_units: int
    ids: FrozenSet[int]

    @property
    def clauses(self) -> int:
        return len(self.ids)


class _SubsetSearch:
    def __init__(
        self,
        formula: Formula,
        budget: Optional[SearchBudget],
        *,
        prefer_horn: bool = False,
        forced: Iterable[int] = (),
    ) -> None:
        self.formula = formula
        self.budget = budget or SearchBudget()
        self.oracle = oracle_for(formula, prefer_horn=prefer_horn)
        report = check(formula, prefer_horn=prefer_horn)
        self.required: FrozenSet[int] = report.irredundant_ids() | frozenset(forced)
        self.undecided: Tuple[int, ...] = tuple(sorted(formula.ids - self.required))
        self.nodes = 0
        self._started = time.monotonic()
        self._last_gap: Optional[int] = None
        if len(self.undecided) > self.budget.max_clauses:
            logger.warning(
                "search.exhausted",
                extra={"reason": "max_clauses", "undecided": len(self.undecided)},
            )
            raise SearchExhausted(
                f"{len(self.undecided)} undecided clauses exceed max_clauses={self.budget.max_clauses}",
                reason="max_clauses",
            )

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            logger.warning("search.exhausted", extra={"reason": "max_nodes", "nodes": self.nodes})
            raise SearchExhausted(
                f"search visited more than {self.budget.max_nodes} nodes", reason="max_nodes", nodes=self.nodes
            )
        if time.monotonic() - self._started > self.budget.time_cap:
            logger.warning("search.exhausted", extra={"reason": "time_cap", "nodes": self.nodes})
            raise SearchExhausted(
                f"search exceeded {self.budget.time_cap}s", reason="time_cap", nodes=self.nodes
            )

    def _entails(self, kept: FrozenSet[int], clause_id: int) -> bool:
        return self.oracle.entails_clause(self.formula.clause(clause_id), excluded=self.formula.ids - kept)

    def covers(self, available: FrozenSet[int], dropped: FrozenSet[int]) -> bool:
        """Whether ``available`` still entails every dropped clause; the last gap is tried first."""
        order = sorted(dropped)
        if self._last_gap in dropped:
            order.remove(self._last_gap)
            order.insert(0, self._last_gap)
        for clause_id in order:
            if not self._entails(available, clause_id):
                self._last_gap = clause_id
                return False
        return True

    def irredundant(self, kept: FrozenSet[int]) -> bool:
        return not any(self._entails(kept - {clause_id}, clause_id) for clause_id in sorted(kept))

    def enumerate(self, *, first_only: bool = False) -> List[FrozenSet[int]]:
        found: List[FrozenSet[int]] = []

        def visit(position: int, kept: FrozenSet[int], dropped: FrozenSet[int]) -> bool:
            self._tick()
            if position == len(self.undecided):
                found.append(kept)
                return first_only
            clause_id = self.undecided[position]
            rest = frozenset(self.undecided[position + 1 :])
            included = kept | {clause_id}
            if self.irredundant(included) and visit(position + 1, included, dropped):
                return True
            excluded = dropped | {clause_id}
            if self.covers(kept | rest, excluded) and visit(position + 1, kept, excluded):
                return True
            return False

        if self.irredundant(self.required):
            visit(0, self.required, frozenset())
        logger.debug("search.enumerate.done", extra={"nodes": self.nodes, "found": len(found)})
        return found

    def minimum(self) -> FrozenSet[int]:
        best: List[FrozenSet[int]] = []

        def should_prune(size: int) -> bool:
            return bool(best) and size >= len(best[0])

        def visit(position: int, kept: FrozenSet[int], dropped: FrozenSet[int]) -> None:
            self._tick()
            if should_prune(len(kept)):
                return
            if position == len(self.undecided):
                best[:] = [kept]
                return
            clause_id = self.undecided[position]
            rest = frozenset(self.undecided[position + 1 :])
            excluded = dropped | {clause_id}
            if self.covers(kept | rest, excluded):
                visit(position + 1, kept, excluded)
            included = kept | {clause_id}
            if self.irredundant(included):
                visit(position + 1, included, dropped)

        visit(0, self.required, frozenset())
        logger.debug(
            "search.minimum.done",
            extra={"nodes": self.nodes, "size": len(best[0]) if best else None},
        )
        return best[0]


def _cross_check(formula: Formula, found: Iterable[FrozenSet[int]]) -> None:
    for ids in found:
        if not truth_table_is_ies(formula, ids):
            logger.error("search.cross_check.failed", extra={"ids": sorted(ids)})
            raise ClauseTrimError(f"truth tables reject the subset {sorted(ids)}")


def enumerate_ies(
    formula: Formula,
    budget: Optional[SearchBudget] = None,
    *,
    prefer_horn: bool = False,
    cross_check: bool = False,
) -> List[FrozenSet[int]]:
    """Every I.E.S. of ``formula``, largest first, ties by sorted clause ids."""
    found = _SubsetSearch(formula, budget, prefer_horn=prefer_horn).enumerate()
    found.sort(key=lambda ids: (-len(ids), sorted(ids)))
    if cross_check:
        _cross_check(formula, found)
    return found


def min_ies_size_exact(
    formula: Formula,
    budget: Optional[SearchBudget] = None,
    *,
    prefer_horn: bool = False,
    cross_check: bool = False,
) -> SizeResult:
    ids = _SubsetSearch(formula, budget, prefer_horn=prefer_horn).minimum()
    if cross_check:
        _cross_check(formula, [ids])
    return SizeResult(half_units=ORIGINAL_CLAUSE_WEIGHT * len(ids), ids=ids)


def in_some_ies_exact(
    formula: Formula,
    clause: Union[int, Clause],
    budget: Optional[SearchBudget] = None,
    *,
    prefer_horn: bool = False,
) -> bool:
    target = formula.find(clause.lits) if isinstance(clause, Clause) else formula.clause(clause)
    search = _SubsetSearch(formula, budget, prefer_horn=prefer_horn, forced=(target.id,))
    return bool(search.enumerate(first_only=True))


def _assignments(count: int) -> np.ndarray:
    if count > MAX_TABLE_VARS:
        raise PreconditionError(
            f"truth tables are limited to {MAX_TABLE_VARS} variables, got {count}", condition="max_table_vars"
        )
    rows = np.arange(1 << count, dtype=np.int64)
    return ((rows[:, None] >> np.arange(count, dtype=np.int64)) & 1).astype(bool)


def _evaluate(formula: Formula, column: Dict[int, int], table: np.ndarray) -> np.ndarray:
    models = np.ones(table.shape[0], dtype=bool)
    for clause in formula.clauses:
        models &= _clause_mask(formula, clause, column, table)
    return models


def _clause_mask(formula: Formula, clause: Clause, column: Dict[int, int], table: np.ndarray) -> np.ndarray:
    satisfied = np.zeros(table.shape[0], dtype=bool)
    for literal in clause.lits:
        values = table[:, column[formula.names[literal.var - 1]]]
        satisfied |= values if literal.positive else ~values
    return satisfied


def _columns(*formulas: Formula) -> Dict[int, int]:
    names = sorted({name for formula in formulas for name in formula.names})
    return {name: index for index, name in enumerate(names)}


def truth_table_models(formula: Formula) -> np.ndarray:
    """Boolean vector over all assignments of the formula's variables; bit i of the row is variable i+1."""
    column = _columns(formula)
    return _evaluate(formula, column, _assignments(len(column)))


def truth_table_equivalent(formula: Formula, other: Formula) -> bool:
    column = _columns(formula, other)
    table = _assignments(len(column))
    return bool(np.array_equal(_evaluate(formula, column, table), _evaluate(other, column, table)))


def truth_table_entails(formula: Formula, clause: Clause, clause_formula: Optional[Formula] = None) -> bool:
    """``formula`` entails ``clause``; ``clause_formula`` supplies its variable names if it is not from ``formula``."""
    owner = clause_formula or formula
    column = _columns(formula, owner)
    table = _assignments(len(column))
    models = _evaluate(formula, column, table)
    return not bool(np.any(models & ~_clause_mask(owner, clause, column, table)))


def truth_table_is_ies(formula: Formula, ids: Iterable[int]) -> bool:
    chosen = formula.subset(ids)
    if not truth_table_equivalent(formula, chosen):
        return False
    return not any(truth_table_entails(chosen.without(clause.id), clause, chosen) for clause in chosen.clauses)


def brute_force_ies(formula: Formula) -> List[FrozenSet[int]]:
    """All I.E.S.'s by truth tables over every subset; only for tiny formulas."""
    found: List[FrozenSet[int]] = []
    ids = sorted(formula.ids)
    for size in range(len(ids), -1, -1):
        for combo in combinations(ids, size):
            if truth_table_is_ies(formula, combo):
                found.append(frozenset(combo))
    return found
