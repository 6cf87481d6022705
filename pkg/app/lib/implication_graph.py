"""Implication graph of a binary formula and the per-literal sets built on it.

Nodes are literal indices (``Literal.index``); the complement of node ``u`` is ``u ^ 1``.
Clause ``a | b`` contributes the edges ``-a -> b`` and ``-b -> a``, both tagged with the
clause id of the weighted base.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import AbstractSet, Deque, Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from .cnf.models import Formula, Literal, WeightedFormula
from .cnf.units import eliminate_units
from .errors import PreconditionError

logger = logging.getLogger("clausetrim.graph")

NO_CLAUSES: FrozenSet[int] = frozenset()
DEFAULT_CYCLE_BUDGET = 50_000


class ImplicationGraph:
    def __init__(self, weighted: WeightedFormula) -> None:
        base = weighted.base
        for clause in base.clauses:
            if clause.width != 2:
                raise PreconditionError(
                    f"clause {clause.id} is not binary; eliminate units first", condition="binary"
                )
        self.weighted = weighted
        self.num_vars = base.num_vars
        size = 2 * base.num_vars
        self.succ: List[List[Tuple[int, int]]] = [[] for _ in range(size)]
        self.pred: List[List[Tuple[int, int]]] = [[] for _ in range(size)]
        self.clause_edges: Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]] = {}
        for clause in base.clauses:
            first_lit, second_lit = clause.lits
            first = ((-first_lit).index, second_lit.index)
            second = ((-second_lit).index, first_lit.index)
            for source, target in (first, second):
                self.succ[source].append((target, clause.id))
                self.pred[target].append((source, clause.id))
            self.clause_edges[clause.id] = (first, second)
        for adjacency in self.succ:
            adjacency.sort()
        for adjacency in self.pred:
            adjacency.sort()

    @property
    def formula(self) -> Formula:
        return self.weighted.base

    @property
    def size(self) -> int:
        return len(self.succ)

    @property
    def edge_count(self) -> int:
        return sum(len(adjacency) for adjacency in self.succ)

    def has_node(self, index: int) -> bool:
        return 0 <= index < len(self.succ)

    def weight(self, clause_id: int) -> int:
        return self.weighted.weight[clause_id]

    def successors(self, literal: Literal) -> List[Tuple[Literal, int]]:
        if not self.has_node(literal.index):
            return []
        return [(Literal.from_index(target), clause_id) for target, clause_id in self.succ[literal.index]]

    def edges(self) -> Iterator[Tuple[int, int, int]]:
        for source, adjacency in enumerate(self.succ):
            for target, clause_id in adjacency:
                yield source, target, clause_id

    @cached_property
    def nx_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        for source, target, clause_id in self.edges():
            graph.add_edge(source, target, clause=clause_id, weight=self.weight(clause_id))
        return graph

    def view(self, excluded: AbstractSet[int] = NO_CLAUSES) -> nx.DiGraph:
        graph = self.nx_graph
        if not excluded:
            return graph
        return nx.subgraph_view(graph, filter_edge=lambda u, v: graph.edges[u, v]["clause"] not in excluded)

    @cached_property
    def component_of(self) -> Dict[int, FrozenSet[int]]:
        mapping: Dict[int, FrozenSet[int]] = {}
        for component in nx.strongly_connected_components(self.nx_graph):
            frozen = frozenset(component)
            for node in frozen:
                mapping[node] = frozen
        return mapping

    def component(self, literal: Literal) -> FrozenSet[int]:
        if not self.has_node(literal.index):
            return frozenset({literal.index})
        return self.component_of[literal.index]


def build(weighted: WeightedFormula) -> ImplicationGraph:
    graph = ImplicationGraph(weighted)
    logger.debug(
        "graph.build",
        extra={"nodes": graph.size, "edges": graph.edge_count, "clauses": weighted.base.m},
    )
    return graph


def build_for(formula: Formula) -> ImplicationGraph:
    return build(eliminate_units(formula))


@dataclass(frozen=True)
class Closure:
    """Literals unit propagation derives from ``start``, with one BFS-tree path each."""

    start: int
    reached: FrozenSet[int]
    parent: Dict[int, Tuple[int, int]] = field(repr=False)

    def __contains__(self, literal: object) -> bool:
        return isinstance(literal, Literal) and literal.index in self.reached

    def literals(self) -> FrozenSet[Literal]:
        return frozenset(Literal.from_index(index) for index in self.reached)

    def path_to(self, literal: Literal) -> List[Tuple[Literal, Literal, int]]:
        if literal.index not in self.reached:
            raise KeyError(f"{literal} is not reached from {Literal.from_index(self.start)}")
        edges: List[Tuple[Literal, Literal, int]] = []
        node = literal.index
        while node != self.start:
            previous, clause_id = self.parent[node]
            edges.append((Literal.from_index(previous), Literal.from_index(node), clause_id))
            node = previous
        edges.reverse()
        return edges

    def clause_ids_to(self, literal: Literal) -> FrozenSet[int]:
        return frozenset(clause_id for _, _, clause_id in self.path_to(literal))


def _bfs(
    graph: ImplicationGraph,
    start: int,
    excluded: AbstractSet[int],
    blocked: AbstractSet[int] = frozenset(),
    reverse: bool = False,
) -> Tuple[Dict[int, Tuple[int, int]], List[int]]:
    parent: Dict[int, Tuple[int, int]] = {}
    order = [start]
    if not graph.has_node(start):
        return parent, order
    adjacency = graph.pred if reverse else graph.succ
    seen = {start}
    queue: Deque[int] = deque([start])
    while queue:
        node = queue.popleft()
        for target, clause_id in adjacency[node]:
            if target in seen or clause_id in excluded or target in blocked:
                continue
            seen.add(target)
            parent[target] = (node, clause_id)
            order.append(target)
            queue.append(target)
    return parent, order


def up_closure(
    graph: ImplicationGraph,
    start: Literal,
    *,
    excluded: AbstractSet[int] = NO_CLAUSES,
    blocked: AbstractSet[int] = frozenset(),
) -> Closure:
    """Closure of ``start`` under unit propagation: reachability in the graph.

    ``excluded`` removes base clauses; ``blocked`` removes nodes (other than ``start``).
    """
    parent, order = _bfs(graph, start.index, excluded, blocked)
    return Closure(start=start.index, reached=frozenset(order), parent=parent)


def reachable(
    graph: ImplicationGraph,
    start: Literal,
    *,
    reverse: bool = False,
    excluded: AbstractSet[int] = NO_CLAUSES,
) -> FrozenSet[int]:
    _, order = _bfs(graph, start.index, excluded, reverse=reverse)
    return frozenset(order)


@dataclass(frozen=True)
class ContradictionWitness:
    """A single walk from ``start`` whose last node complements ``pivot``.

    ``pivot`` is the last literal shared by the two derivations and ``clash_var`` is its
    variable: the walk passes ``pivot`` and ends at its complement.
    """

    start: Literal
    clash_var: int
    pivot: Literal
    path: Tuple[Literal, ...]
    clause_ids: Tuple[int, ...]

    @property
    def clauses(self) -> FrozenSet[int]:
        return frozenset(self.clause_ids)


def _tree_path(parent: Dict[int, Tuple[int, int]], start: int, node: int) -> List[int]:
    nodes = [node]
    while node != start:
        node = parent[node][0]
        nodes.append(node)
    nodes.reverse()
    return nodes


def up_bottom(
    graph: ImplicationGraph,
    start: Literal,
    *,
    excluded: AbstractSet[int] = NO_CLAUSES,
) -> Optional[ContradictionWitness]:
    """Witness that ``start`` propagates to a contradiction, or None."""
    origin = start.index
    if not graph.has_node(origin):
        return None
    parent: Dict[int, Tuple[int, int]] = {}
    reached = {origin}
    frontier = [origin]
    while frontier:
        clashes = sorted(node >> 1 for node in frontier if node ^ 1 in reached)
        if clashes:
            return _witness(graph, start, parent, clashes[0])
        following: List[int] = []
        for node in frontier:
            for target, clause_id in graph.succ[node]:
                if target in reached or clause_id in excluded:
                    continue
                reached.add(target)
                parent[target] = (node, clause_id)
                following.append(target)
        frontier = following
    return None


def _witness(
    graph: ImplicationGraph,
    start: Literal,
    parent: Dict[int, Tuple[int, int]],
    clash: int,
) -> ContradictionWitness:
    origin = start.index
    positive = _tree_path(parent, origin, 2 * clash)
    negative = _tree_path(parent, origin, 2 * clash + 1)
    common = 0
    while common < min(len(positive), len(negative)) and positive[common] == negative[common]:
        common += 1
    pivot = positive[common - 1]
    walk = list(positive)
    clause_ids = [parent[node][1] for node in positive[1:]]
    tail = negative[common:]
    # mirror the negative branch back to -pivot; dual edges share clause ids
    previous = [pivot] + tail[:-1]
    for node, before in zip(reversed(tail), reversed(previous)):
        clause_ids.append(parent[node][1])
        walk.append(before ^ 1)
    return ContradictionWitness(
        start=start,
        clash_var=(pivot >> 1) + 1,
        pivot=Literal.from_index(pivot),
        path=tuple(Literal.from_index(node) for node in walk),
        clause_ids=tuple(clause_ids),
    )


class CycleStatus(str, Enum):
    ACYCLIC = "acyclic"
    CYCLIC = "cyclic"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Cyclicity:
    status: CycleStatus
    cycle: Tuple[Literal, ...] = ()
    searched: bool = False

    @property
    def is_cyclic(self) -> bool:
        return self.status is CycleStatus.CYCLIC

    @property
    def is_acyclic(self) -> bool:
        return self.status is CycleStatus.ACYCLIC


def _has_complementary_pair(nodes: Iterable[int]) -> bool:
    members = set(nodes)
    return any(node ^ 1 in members for node in members)


def cyclicity(graph: ImplicationGraph, *, max_cycles: int = DEFAULT_CYCLE_BUDGET) -> Cyclicity:
    """Decide whether the formula has a cycle of clauses.

    A strongly connected component free of complementary pairs certifies a cycle. Components
    that do contain complementary pairs (only possible for inconsistent formulas) are searched
    for a simple cycle avoiding them, up to ``max_cycles`` enumerated cycles.
    """
    nx_graph = graph.nx_graph
    mixed: List[FrozenSet[int]] = []
    components = sorted(
        (frozenset(component) for component in nx.strongly_connected_components(nx_graph)), key=min
    )
    for component in components:
        if len(component) < 2:
            continue
        if _has_complementary_pair(component):
            mixed.append(component)
            continue
        found = nx.find_cycle(nx_graph.subgraph(component), source=min(component))
        return Cyclicity(
            CycleStatus.CYCLIC, cycle=tuple(Literal.from_index(source) for source, _ in found)
        )

    examined = 0
    for component in mixed:
        for cycle in nx.simple_cycles(nx_graph.subgraph(component)):
            examined += 1
            if examined > max_cycles:
                logger.warning(
                    "graph.cyclicity.budget_exhausted",
                    extra={"max_cycles": max_cycles, "component_size": len(component)},
                )
                return Cyclicity(CycleStatus.UNKNOWN, searched=True)
            if not _has_complementary_pair(cycle):
                return Cyclicity(
                    CycleStatus.CYCLIC,
                    cycle=tuple(Literal.from_index(node) for node in cycle),
                    searched=True,
                )
    return Cyclicity(CycleStatus.ACYCLIC, searched=bool(mixed))


@dataclass(frozen=True)
class LiteralSets:
    """The per-literal families the I.E.S. constructions work with.

    successors        C  literals one clause away from ``literal``
    own_clauses       D  clauses ``-literal | l'`` (base ids)
    rest_clauses      R  every other base clause
    unreached         M  successors no other successor reaches within R
    refuting          S  successors that propagate to a contradiction within R
    opposing_pairs    P  successor pairs, neither in S, where one derives the other's complement
    cycle_companions  CC literals on a common cycle with ``literal`` (includes it)
    cycle_frontier    JC one-step successors of CC outside CC
    frontier_closure  LC unit-propagation closure of JC
    """

    literal: Literal
    successors: FrozenSet[Literal]
    own_clauses: FrozenSet[int]
    rest_clauses: FrozenSet[int]
    unreached: FrozenSet[Literal]
    refuting: FrozenSet[Literal]
    opposing_pairs: FrozenSet[Tuple[Literal, Literal]]
    cycle_companions: FrozenSet[Literal]
    cycle_frontier: FrozenSet[Literal]
    frontier_closure: FrozenSet[Literal]
    edge_clause: Dict[Literal, int] = field(default_factory=dict, repr=False)


def literal_sets(graph: ImplicationGraph, literal: Literal) -> LiteralSets:
    origin = literal.index
    outgoing = list(graph.succ[origin]) if graph.has_node(origin) else []
    own = frozenset(clause_id for _, clause_id in outgoing)
    rest = frozenset(graph.formula.ids) - own
    targets = [target for target, _ in outgoing]

    closures = {target: frozenset(_bfs(graph, target, own)[1]) for target in targets}
    unreached = {
        target
        for target in targets
        if not any(target in closures[other] for other in targets if other != target)
    }
    refuting = {
        target
        for target in targets
        if up_bottom(graph, Literal.from_index(target), excluded=own) is not None
    }
    pairs = set()
    for first in targets:
        for second in targets:
            if first >= second or first in refuting or second in refuting:
                continue
            if second ^ 1 in closures[first]:
                pairs.add((Literal.from_index(first), Literal.from_index(second)))

    companions = graph.component(literal)
    frontier = {
        target
        for node in companions
        if graph.has_node(node)
        for target, _ in graph.succ[node]
        if target not in companions
    }
    frontier_closure = set()
    for node in frontier:
        frontier_closure.update(_bfs(graph, node, NO_CLAUSES)[1])

    def as_literals(nodes: Iterable[int]) -> FrozenSet[Literal]:
        return frozenset(Literal.from_index(node) for node in nodes)

    return LiteralSets(
        literal=literal,
        successors=as_literals(targets),
        own_clauses=own,
        rest_clauses=rest,
        unreached=as_literals(unreached),
        refuting=as_literals(refuting),
        opposing_pairs=frozenset(pairs),
        cycle_companions=as_literals(companions),
        cycle_frontier=as_literals(frontier),
        frontier_closure=as_literals(frontier_closure),
        edge_clause={Literal.from_index(target): clause_id for target, clause_id in outgoing},
    )


_TWO = -1


def shared_successors(graph: ImplicationGraph, literal: Literal) -> Dict[int, bool]:
    """Marked BFS over the graph minus ``literal``, seeded with its successors.

    Maps each successor's outgoing clause id to True when another successor reaches that
    successor (the seed ends up with the *two* mark). Each call costs O(m).
    """
    origin = literal.index
    if not graph.has_node(origin):
        return {}
    label: Dict[int, int] = {}
    distance: Dict[int, int] = {}
    queue: Deque[int] = deque()
    doubled: Deque[int] = deque()
    for target, _ in graph.succ[origin]:
        label[target] = target
        distance[target] = 0
        queue.append(target)

    while queue:
        node = queue.popleft()
        mark = label[node]
        if mark == _TWO:
            continue
        for target, _ in graph.succ[node]:
            if target == origin:
                continue
            current = label.get(target)
            if current is None:
                label[target] = mark
                distance[target] = distance[node] + 1
                queue.append(target)
            elif current != _TWO and current != mark:
                label[target] = _TWO
                doubled.append(target)

    while doubled:
        node = doubled.popleft()
        for target, _ in graph.succ[node]:
            if target != origin and label.get(target) != _TWO:
                label[target] = _TWO
                doubled.append(target)

    return {clause_id: label[target] == _TWO for target, clause_id in graph.succ[origin]}


def to_dot(graph: ImplicationGraph) -> str:
    formula = graph.formula
    lines = ["digraph implication {"]
    for index in range(graph.size):
        name = formula.name_of(Literal.from_index(index))
        lines.append(f'  "{name}";')
    for source, target, clause_id in graph.edges():
        left = formula.name_of(Literal.from_index(source))
        right = formula.name_of(Literal.from_index(target))
        label = graph.weighted.source_id(clause_id)
        lines.append(f'  "{left}" -> "{right}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
