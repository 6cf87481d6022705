"""Polynomial tests for whether a clause belongs to some I.E.S.

The noncycle test returns ``None`` when the clause sits on a cycle of equivalent
literals; those instances are hard and go to exact search.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from ..cnf.models import Clause, Formula, Literal
from ..entailment import Classification, EntailmentOracle, classify_with, decompose
from ..errors import PreconditionError
from ..implication_graph import ImplicationGraph, build_for, reachable, up_bottom, up_closure
from ..redundancy import ClauseRef, resolve_clause
from ..reports import Regime


def in_some_ies_acyclic_inconsistent(
    formula: Formula,
    clause: ClauseRef,
    *,
    oracle: Optional[EntailmentOracle] = None,
    cls: Optional[Classification] = None,
) -> bool:
    """A clause is in some minimal inconsistent subset iff, without it, each of its
    literals still propagates to a contradiction (or the rest is consistent)."""
    target = resolve_clause(formula, clause)
    oracle = oracle or EntailmentOracle(formula)
    cls = cls or classify_with(oracle)
    if cls.regime is not Regime.INCONSISTENT:
        raise PreconditionError("formula is consistent", condition="inconsistent")
    if not cls.cyclicity.is_acyclic:
        raise PreconditionError("formula is not known to be acyclic", condition="acyclic")
    if oracle.consistent({target.id}):
        return True
    excluded = oracle.weighted.to_base_ids({target.id})
    return all(up_bottom(oracle.graph, literal, excluded=excluded) is not None for literal in target.lits)


def _orientations(target: Clause) -> List[Tuple[Literal, Literal]]:
    first, second = target.lits
    return [(-first, second), (-second, first)]


def _between_equivalents(graph: ImplicationGraph, source: Literal, sink: Literal) -> Optional[bool]:
    source_component = graph.component(source)
    sink_component = graph.component(sink)
    if source.index in sink_component:
        return None
    forward = reachable(graph, source)
    backward = reachable(graph, sink, reverse=True)
    return (forward & backward) <= (source_component | sink_component)


def _touched_orientation(graph: ImplicationGraph, source: Literal, sink: Literal) -> Optional[bool]:
    if source.index in reachable(graph, sink):
        return None
    if up_bottom(graph, sink) is not None:
        return True
    closure = up_closure(graph, sink)
    return any(index ^ 1 in closure.reached for index in graph.component(source))


def in_some_ies_noncycle_clause(
    formula: Formula,
    clause: ClauseRef,
    *,
    oracle: Optional[EntailmentOracle] = None,
    cls: Optional[Classification] = None,
) -> Optional[bool]:
    """Presence of a binary clause ``l1 -> l2`` of a consistent formula in some I.E.S.

    With no implied literal involved the clause is in some I.E.S. iff every literal on an
    ``l1 => l2`` path is equivalent to ``l1`` or ``l2``. When the formula entails ``-l1``
    the clause is in some I.E.S. iff ``l2`` refutes itself or derives the complement of a
    literal on ``l1``'s cycle. ``None`` means the clause lies on a cycle or both of its
    literals are implied; exact search decides those.
    """
    target = resolve_clause(formula, clause)
    oracle = oracle or EntailmentOracle(formula)
    cls = cls or classify_with(oracle)
    if not cls.consistent:
        raise PreconditionError("formula is inconsistent", condition="consistent")
    if target.is_unit:
        raise PreconditionError("presence test takes a binary clause", condition="binary_clause")

    touched = [
        (source, sink) for source, sink in _orientations(target) if -source in cls.implied
    ]
    if len(touched) == 2:
        # both literals implied: the orientation rule does not apply
        return None
    if not touched:
        if cls.regime is Regime.CONSISTENT_NO_IMPLIED:
            graph = oracle.graph
        else:
            graph = build_for(decompose(formula, cls.implied).core)
        source, sink = _orientations(target)[0]
        return _between_equivalents(graph, source, sink)

    answers = [_touched_orientation(oracle.graph, source, sink) for source, sink in touched]
    if any(answer is True for answer in answers):
        return True
    if any(answer is None for answer in answers):
        return None
    return False
