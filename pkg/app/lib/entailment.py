"""Unit-propagation entailment for 2CNF formulas, the regime classification and the
implied-literal decomposition."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import AbstractSet, Dict, FrozenSet, Iterable, List, Optional, Sequence, Union

import networkx as nx

from .cnf.models import Clause, Formula, Literal, WeightedFormula
from .cnf.units import eliminate_units
from .errors import PreconditionError
from .horn import HornOracle
from .implication_graph import (
    ContradictionWitness,
    Cyclicity,
    ImplicationGraph,
    build,
    cyclicity,
    up_bottom,
    up_closure,
)
from .reports import Regime

logger = logging.getLogger("clausetrim.entailment")

ClauseLike = Union[Clause, Sequence[Literal]]

_CACHE_LIMIT = 65_536


@dataclass(frozen=True)
class InconsistencyWitness:
    """Variable whose two literals both propagate to a contradiction."""

    var: int
    positive: ContradictionWitness
    negative: ContradictionWitness


@dataclass(frozen=True)
class Consistency:
    consistent: bool
    witness: Optional[InconsistencyWitness] = None

    def __bool__(self) -> bool:
        return self.consistent


def _literals(clause: ClauseLike) -> List[Literal]:
    return list(clause.lits) if isinstance(clause, Clause) else list(clause)


class EntailmentOracle:
    """Entailment queries against one 2CNF formula, optionally minus some of its clauses.

    ``excluded`` arguments are clause ids of the source formula. Literals over variables
    the formula does not mention are answered as isolated literals.
    """

    def __init__(self, formula: Formula) -> None:
        if not formula.kind.is_binary:
            raise PreconditionError("entailment oracle needs a 2CNF formula", condition="2cnf")
        self.formula = formula
        self.weighted: WeightedFormula = eliminate_units(formula)
        self.graph: ImplicationGraph = build(self.weighted)
        self._clash: Dict[FrozenSet[int], Optional[int]] = {}

    def _node(self, literal: Literal) -> Literal:
        if literal.var <= self.formula.num_vars:
            return literal
        return Literal(self.weighted.base.num_vars + literal.var, literal.positive)

    def _base_excluded(self, excluded: AbstractSet[int]) -> FrozenSet[int]:
        return self.weighted.to_base_ids(excluded) if excluded else frozenset()

    def clash_var(self, excluded: AbstractSet[int] = frozenset()) -> Optional[int]:
        """Smallest variable whose literals share a strongly connected component, if any."""
        key = frozenset(excluded)
        if key in self._clash:
            return self._clash[key]
        view = self.graph.view(self._base_excluded(key))
        component: Dict[int, int] = {}
        for number, members in enumerate(nx.strongly_connected_components(view)):
            for node in members:
                component[node] = number
        found: Optional[int] = None
        for var in range(self.weighted.base.num_vars):
            if component[2 * var] == component[2 * var + 1]:
                found = var + 1
                break
        if len(self._clash) >= _CACHE_LIMIT:
            self._clash.clear()
        self._clash[key] = found
        return found

    def consistent(self, excluded: AbstractSet[int] = frozenset()) -> bool:
        return self.clash_var(excluded) is None

    def is_consistent(self, excluded: AbstractSet[int] = frozenset()) -> Consistency:
        var = self.clash_var(excluded)
        if var is None:
            return Consistency(True)
        base_excluded = self._base_excluded(frozenset(excluded))
        positive = up_bottom(self.graph, Literal(var, True), excluded=base_excluded)
        negative = up_bottom(self.graph, Literal(var, False), excluded=base_excluded)
        assert positive is not None and negative is not None
        return Consistency(False, InconsistencyWitness(var, positive, negative))

    def entails_literal(self, literal: Literal, excluded: AbstractSet[int] = frozenset()) -> bool:
        if not self.consistent(excluded):
            return True
        witness = up_bottom(self.graph, self._node(-literal), excluded=self._base_excluded(excluded))
        return witness is not None

    def entails_clause(self, clause: ClauseLike, excluded: AbstractSet[int] = frozenset()) -> bool:
        literals = _literals(clause)
        if len(literals) == 1:
            return self.entails_literal(literals[0], excluded)
        if len(literals) != 2:
            raise PreconditionError("2CNF entailment takes clauses of one or two literals", condition="2cnf")
        if not self.consistent(excluded):
            return True
        base_excluded = self._base_excluded(excluded)
        first, second = (self._node(literal) for literal in literals)
        if up_bottom(self.graph, -first, excluded=base_excluded) is not None:
            return True
        if up_bottom(self.graph, -second, excluded=base_excluded) is not None:
            return True
        return second in up_closure(self.graph, -first, excluded=base_excluded)

    def implied_literals(self) -> FrozenSet[Literal]:
        """Literals ``l`` with ``-l`` reaching ``l``: one reachability sweep over the condensation."""
        if not self.consistent():
            raise PreconditionError("implied literals are only defined for consistent formulas", condition="consistent")
        graph = self.graph.nx_graph
        condensed = nx.condensation(graph)
        mapping = condensed.graph["mapping"]
        reach: Dict[int, int] = {}
        for component in reversed(list(nx.topological_sort(condensed))):
            bits = 1 << component
            for successor in condensed.successors(component):
                bits |= reach[successor]
            reach[component] = bits
        implied = set()
        for var in range(self.formula.num_vars):
            for index in (2 * var, 2 * var + 1):
                if reach[mapping[index ^ 1]] >> mapping[index] & 1:
                    implied.add(Literal.from_index(index))
        return frozenset(implied)


def oracle_for(formula: Formula, *, prefer_horn: bool = False) -> Union[EntailmentOracle, HornOracle]:
    """2CNF oracle unless the formula is only Horn or Horn treatment is forced."""
    if formula.kind.is_binary and not (prefer_horn and formula.kind.is_horn):
        return EntailmentOracle(formula)
    return HornOracle(formula)


def is_consistent(formula: Formula) -> Consistency:
    return EntailmentOracle(formula).is_consistent()


def entails_literal(formula: Formula, literal: Literal) -> bool:
    return EntailmentOracle(formula).entails_literal(literal)


def entails_clause(formula: Formula, clause: ClauseLike) -> bool:
    return EntailmentOracle(formula).entails_clause(clause)


def implied_literals(formula: Formula) -> FrozenSet[Literal]:
    return EntailmentOracle(formula).implied_literals()


def _translate(target: Formula, source: Formula, clause: Clause) -> List[Literal]:
    """Rewrite ``clause`` of ``source`` over ``target``'s variables, matching original names."""
    var_of = {name: index + 1 for index, name in enumerate(target.names)}
    literals = []
    for literal in clause.lits:
        name = source.names[literal.var - 1]
        var = var_of.get(name, target.num_vars + name)
        literals.append(Literal(var, literal.positive))
    return literals


def entails_formula(formula: Formula, other: Formula, *, prefer_horn: bool = False) -> bool:
    """True when ``formula`` entails every clause of ``other`` (matched by original variable names)."""
    oracle = oracle_for(formula, prefer_horn=prefer_horn)
    return all(oracle.entails_clause(_translate(formula, other, clause)) for clause in other.clauses)


def equivalent(formula: Formula, other: Formula, *, prefer_horn: bool = False) -> bool:
    return entails_formula(formula, other, prefer_horn=prefer_horn) and entails_formula(
        other, formula, prefer_horn=prefer_horn
    )


@dataclass(frozen=True)
class Classification:
    regime: Regime
    implied: FrozenSet[Literal]
    cyclicity: Cyclicity
    witness: Optional[InconsistencyWitness] = None

    @property
    def cyclic(self) -> bool:
        return self.cyclicity.is_cyclic

    @property
    def consistent(self) -> bool:
        return self.regime is not Regime.INCONSISTENT

    def describe(self) -> str:
        consistency = "inconsistent" if self.regime is Regime.INCONSISTENT else "consistent"
        return f"{consistency}, {self.cyclicity.status.value}"

    def to_dict(self, formula: Optional[Formula] = None) -> Dict[str, object]:
        def name(literal: Literal) -> int:
            return formula.name_of(literal) if formula is not None else literal.to_int()

        return {
            "regime": self.regime.value,
            "cyclic": self.cyclicity.status.value,
            "implied": sorted(name(literal) for literal in self.implied),
            "cycle": [name(literal) for literal in self.cyclicity.cycle],
            "clash_var": None if self.witness is None else name(Literal(self.witness.var, True)),
        }


def classify_with(oracle: EntailmentOracle, *, max_cycles: Optional[int] = None) -> Classification:
    consistency = oracle.is_consistent()
    cycles = cyclicity(oracle.graph) if max_cycles is None else cyclicity(oracle.graph, max_cycles=max_cycles)
    if not consistency:
        result = Classification(Regime.INCONSISTENT, frozenset(), cycles, consistency.witness)
    else:
        implied = oracle.implied_literals()
        regime = Regime.CONSISTENT_IMPLYING if implied else Regime.CONSISTENT_NO_IMPLIED
        result = Classification(regime, implied, cycles)
    logger.debug(
        "entailment.classify.done",
        extra={
            "regime": result.regime.value,
            "cyclic": cycles.status.value,
            "implied": len(result.implied),
            "clauses": oracle.formula.m,
        },
    )
    return result


def classify(formula: Formula, *, max_cycles: Optional[int] = None) -> Classification:
    return classify_with(EntailmentOracle(formula), max_cycles=max_cycles)


@dataclass(frozen=True)
class Decomposition:
    """Split of a consistent formula around its implied literals.

    ``touched`` holds the clauses containing an implied literal, ``core`` the rest; both
    keep the clause ids of the input formula.
    """

    touched: Formula
    core: Formula
    implied: FrozenSet[Literal]

    def with_units(self) -> Formula:
        """``core`` plus one unit clause per implied literal, ids continuing above the input's."""
        next_id = max(self.core.max_id, self.touched.max_id)
        units = [Clause(next_id + offset, (literal,)) for offset, literal in enumerate(sorted(self.implied), start=1)]
        return Formula(self.core.clauses + tuple(units), num_vars=self.core.num_vars, names=self.core.names)


def decompose(formula: Formula, implied: Optional[Iterable[Literal]] = None) -> Decomposition:
    literals = frozenset(implied) if implied is not None else implied_literals(formula)
    touched = [clause.id for clause in formula.clauses if any(literal in literals for literal in clause.lits)]
    core = formula.ids.difference(touched)
    return Decomposition(touched=formula.subset(touched), core=formula.subset(core), implied=literals)
