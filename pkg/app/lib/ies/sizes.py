"""Minimum I.E.S. sizes that have a polynomial answer, in half-units."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from ..cnf.models import Formula, Literal
from ..entailment import Classification, EntailmentOracle, classify_with
from ..errors import PreconditionError
from ..implication_graph import ImplicationGraph, up_bottom, up_closure
from ..reports import Regime

logger = logging.getLogger("clausetrim.ies")

UNREACHABLE = 10**12


@dataclass(frozen=True)
class InconsistentSize:
    """Smallest inconsistent subset of an acyclic inconsistent formula.

    ``half_units`` is the value of the winning path pattern; ``witness_half_units`` is the
    weight of ``ids`` after shared clauses are counted once.
    """

    half_units: int
    ids: FrozenSet[int]
    pattern: str
    witness_half_units: int


@dataclass(frozen=True)
class CyclicImpliedSize:
    half_units: Optional[int]
    case: str

    @property
    def needs_search(self) -> bool:
        return self.half_units is None


def distance_table(graph: ImplicationGraph) -> np.ndarray:
    """All-pairs shortest path lengths in half-units; ``UNREACHABLE`` where there is no path."""
    size = graph.size
    table = np.full((size, size), UNREACHABLE, dtype=np.int64)
    nx_graph = graph.nx_graph
    for source in range(size):
        for target, length in nx.single_source_dijkstra_path_length(nx_graph, source, weight="weight").items():
            table[source, target] = length
    return table


def _require_acyclic_inconsistent(cls: Classification) -> None:
    if cls.regime is not Regime.INCONSISTENT:
        raise PreconditionError("formula is consistent", condition="inconsistent")
    if not cls.cyclicity.is_acyclic:
        raise PreconditionError("formula is not known to be acyclic", condition="acyclic")


def min_inconsistent_size_acyclic(
    formula: Formula,
    *,
    oracle: Optional[EntailmentOracle] = None,
    cls: Optional[Classification] = None,
) -> InconsistentSize:
    """Minimize over the two path patterns of an acyclic inconsistent formula.

    ``lasso(u)`` is the cheapest ``u => l => -l``. Either both ``x`` and ``-x`` have their
    own lasso, or they first meet at ``c`` and share the lasso of ``c``.
    """
    oracle = oracle or EntailmentOracle(formula)
    cls = cls or classify_with(oracle)
    _require_acyclic_inconsistent(cls)
    graph = oracle.graph
    size = graph.size
    table = distance_table(graph)
    nodes = np.arange(size)
    loop = table[nodes, nodes ^ 1]
    lasso_costs = table + loop[None, :]
    lasso = lasso_costs.min(axis=1)
    lasso_end = lasso_costs.argmin(axis=1)

    best: Optional[Tuple[int, str, int, int]] = None
    for var in range(size // 2):
        positive, negative = 2 * var, 2 * var + 1
        split = int(lasso[positive] + lasso[negative])
        if best is None or split < best[0]:
            best = (split, "split", var, -1)
        meet_costs = table[positive] + table[negative] + lasso
        meet = int(meet_costs.argmin())
        shared = int(meet_costs[meet])
        if shared < best[0]:
            best = (shared, "shared", var, meet)
    assert best is not None and best[0] < UNREACHABLE

    value, pattern, var, meet = best
    base_ids: Set[int] = set()

    def add_path(source: int, target: int) -> None:
        if source == target:
            return
        path = nx.dijkstra_path(graph.nx_graph, source, target, weight="weight")
        for left, right in zip(path, path[1:]):
            base_ids.add(graph.nx_graph.edges[left, right]["clause"])

    def add_lasso(source: int) -> None:
        end = int(lasso_end[source])
        add_path(source, end)
        add_path(end, end ^ 1)

    if pattern == "split":
        add_lasso(2 * var)
        add_lasso(2 * var + 1)
    else:
        add_path(2 * var, meet)
        add_path(2 * var + 1, meet)
        add_lasso(meet)

    weighted = oracle.weighted
    ids = weighted.to_source_ids(base_ids)
    witness_weight = 2 * len(ids)
    if witness_weight != value:
        logger.warning(
            "ies.sizes.witness_weight_mismatch",
            extra={"pattern": pattern, "pattern_half_units": value, "witness_half_units": witness_weight},
        )
    logger.debug("ies.sizes.inconsistent_done", extra={"pattern": pattern, "half_units": value, "var": var + 1})
    return InconsistentSize(half_units=value, ids=ids, pattern=pattern, witness_half_units=witness_weight)


def size_cyclic_implied(
    formula: Formula,
    literal: Literal,
    *,
    oracle: Optional[EntailmentOracle] = None,
    cls: Optional[Classification] = None,
) -> CyclicImpliedSize:
    """Half-units an I.E.S. spends on the cycle component of ``literal`` when the formula entails ``-literal``.

    The component keeps ``|CC| - 1`` clauses as an in-tree towards one node ``c`` plus the
    clauses leaving ``c``: one when its target refutes itself, two when the targets
    derive each other's complement. Anything else needs two exits on distinct nodes and
    is left to search.
    """
    oracle = oracle or EntailmentOracle(formula)
    cls = cls or classify_with(oracle)
    if not cls.consistent:
        raise PreconditionError("formula is inconsistent", condition="consistent")
    if -literal not in cls.implied:
        raise PreconditionError(f"formula does not entail {-literal}", condition="entails_negation")
    graph = oracle.graph
    component = graph.component(literal)
    if len(component) < 2:
        raise PreconditionError(f"literal {literal} is on no clause cycle", condition="cyclic_literal")

    exits: List[Tuple[int, int, int]] = []
    exit_count: Dict[int, int] = {}
    for node in sorted(component):
        for target, clause_id in graph.succ[node]:
            if target not in component:
                exits.append((node, target, clause_id))
                exit_count[clause_id] = exit_count.get(clause_id, 0) + 1
    if any(count > 1 for count in exit_count.values()):
        return CyclicImpliedSize(None, "two_exit_clause")

    leaving = frozenset(exit_count)
    tree = 2 * (len(component) - 1)
    best: Optional[Tuple[int, str]] = None
    for node, target, clause_id in exits:
        if up_bottom(graph, Literal.from_index(target), excluded=leaving) is not None:
            cost = tree + graph.weight(clause_id)
            if best is None or cost < best[0]:
                best = (cost, "single_exit")
    for node, first, first_id in exits:
        closure = up_closure(graph, Literal.from_index(first), excluded=leaving)
        for other, second, second_id in exits:
            if other != node or second == first:
                continue
            if second ^ 1 in closure.reached:
                cost = tree + graph.weight(first_id) + graph.weight(second_id)
                if best is None or cost < best[0]:
                    best = (cost, "paired_exits")
    if best is None:
        return CyclicImpliedSize(None, "distinct_exit_nodes")
    return CyclicImpliedSize(best[0], best[1])
