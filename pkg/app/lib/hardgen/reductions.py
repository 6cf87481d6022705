"""Reductions from graph and 3SAT problems to I.E.S. questions.

Node ``i`` of a source graph is variable ``i + 1``. Gadget variables are allocated above
the source range and recorded by name in ``GeneratedInstance.gadget``. An edge ``a -> b``
between literals becomes the clause ``-a | b``.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from ..cnf.models import Formula
from ..errors import GeneratorError
from .models import Digraph, Edge, GeneratedInstance, UndirectedGraph
from .sources import (
    has_disjoint_paths,
    has_simple_cycle_through,
    has_simple_path_through_edge,
    has_simple_path_through_node,
    is_satisfiable,
    min_equivalent_subgraph_size,
    min_vertex_cover,
)

logger = logging.getLogger("clausetrim.hardgen")

Row = Tuple[int, ...]


def pin_edge(source: int, target: int, fresh: int) -> Tuple[Row, Row]:
    """``source -> target`` routed through a fresh variable that appears nowhere else."""
    return (-source, fresh), (-fresh, target)


class _Builder:
    def __init__(self, num_vars: int) -> None:
        self.num_vars = num_vars
        self.rows: List[Row] = []
        self.gadget: Dict[str, int] = {}

    def fresh(self, name: str) -> int:
        self.num_vars += 1
        self.gadget[name] = self.num_vars
        return self.num_vars

    def edge(self, source: int, target: int) -> Row:
        row = (-source, target)
        self.rows.append(row)
        return row

    def pinned(self, source: int, target: int, name: str) -> None:
        self.rows.extend(pin_edge(source, target, self.fresh(name)))

    def formula(self) -> Formula:
        return Formula.from_ints(self.rows, num_vars=self.num_vars)


def _var(node: int) -> int:
    return node + 1


def _require(condition: bool, message: str, reduction: str) -> None:
    if not condition:
        raise GeneratorError(message, reduction=reduction)


def _finish(instance: GeneratedInstance) -> GeneratedInstance:
    logger.debug(
        "hardgen.generated",
        extra={
            "reduction": instance.reduction,
            "clauses": instance.formula.m,
            "variables": instance.formula.n,
            "truth": instance.truth,
        },
    )
    return instance


def gen_size_cyclic_implied(graph: Digraph, x: int, y: int) -> GeneratedInstance:
    """Minimum I.E.S. size ``k`` iff the graph has a simple cycle through ``x`` and ``y``.

    Nodes that cannot reach ``x`` are dropped; ``x -> z`` and ``y -> -z`` make every
    remaining node false.
    """
    name = "size-cyclic-implied"
    _require(x != y, "x and y must differ", name)
    nx_graph = graph.to_networkx()
    _require(nx.has_path(nx_graph, x, y) and nx.has_path(nx_graph, y, x), "x and y must reach each other", name)
    kept = sorted(nx.ancestors(nx_graph, x) | {x})
    position = {node: index for index, node in enumerate(kept)}
    reduced = Digraph(
        len(kept),
        tuple((position[u], position[v]) for u, v in graph.edges if u in position and v in position),
    )
    builder = _Builder(len(kept))
    for source, target in reduced.edges:
        builder.edge(_var(source), _var(target))
    builder.gadget.update({"x": _var(position[x]), "y": _var(position[y])})
    z = builder.fresh("z")
    builder.edge(_var(position[x]), z)
    builder.edge(_var(position[y]), -z)
    return _finish(
        GeneratedInstance(
            reduction=name,
            formula=builder.formula(),
            truth=has_simple_cycle_through(reduced, position[x], position[y]),
            k=(len(kept) + 2) * 2,
            gadget=builder.gadget,
            source={"graph": reduced.to_dict(), "x": position[x], "y": position[y], "kept": kept},
        )
    )


def gen_size_strongly_connected(graph: Digraph) -> GeneratedInstance:
    """All variables equivalent; the minimum I.E.S. is a minimum equivalent subgraph."""
    name = "size-strongly-connected"
    _require(graph.num_nodes >= 2, "graph needs at least two nodes", name)
    _require(nx.is_strongly_connected(graph.to_networkx()), "graph is not strongly connected", name)
    builder = _Builder(graph.num_nodes)
    for source, target in graph.edges:
        builder.edge(_var(source), _var(target))
    truth = min_equivalent_subgraph_size(graph)
    return _finish(
        GeneratedInstance(
            reduction=name,
            formula=builder.formula(),
            truth=truth,
            k=2 * truth,
            source={"graph": graph.to_dict()},
        )
    )


def _presence_inconsistent(graph: Digraph, x: int, y: int, focus: Edge, name: str) -> Tuple[Formula, int, Dict[str, int]]:
    _require(focus in graph.edges, f"focus edge {focus} is not in the graph", name)
    _require(x != y, "x and y must differ", name)
    _require(nx.has_path(graph.to_networkx(), x, y), "y must be reachable from x", name)
    builder = _Builder(graph.num_nodes)
    for source, target in graph.edges:
        builder.edge(_var(source), _var(target))
    z = builder.fresh("z")
    w = builder.fresh("w")
    builder.edge(_var(y), z)
    builder.edge(_var(y), -z)
    builder.edge(-_var(x), w)
    builder.edge(-_var(x), -w)
    formula = builder.formula()
    focus_id = formula.find((-_var(focus[0]), _var(focus[1]))).id
    return formula, focus_id, builder.gadget


def gen_presence_inconsistent(graph: Digraph, x: int, y: int, focus_edge: Edge) -> GeneratedInstance:
    """Focus edge in some minimal inconsistent subset iff a simple ``x => y`` path uses it."""
    name = "presence-inconsistent"
    formula, focus_id, gadget = _presence_inconsistent(graph, x, y, focus_edge, name)
    return _finish(
        GeneratedInstance(
            reduction=name,
            formula=formula,
            truth=has_simple_path_through_edge(graph, x, y, focus_edge),
            focus=focus_id,
            gadget=gadget,
            source={"graph": graph.to_dict(), "x": x, "y": y, "focus_edge": list(focus_edge)},
        )
    )


def split_node(graph: Digraph, node: int) -> Tuple[Digraph, int, int]:
    """Replace ``node`` by ``node -> new``: in-edges stay on ``node``, out-edges leave ``new``."""
    added = graph.num_nodes
    edges = []
    for source, target in graph.edges:
        edges.append((added if source == node else source, target))
    edges.append((node, added))
    return Digraph(graph.num_nodes + 1, tuple(edges)), node, added


def gen_presence_inconsistent_node(graph: Digraph, x: int, y: int, node: int) -> GeneratedInstance:
    """Node variant: the focus is the split edge, so presence means a simple path through ``node``."""
    name = "presence-inconsistent-node"
    _require(node not in (x, y), "the visited node must differ from x and y", name)
    split, entry, leave = split_node(graph, node)
    formula, focus_id, gadget = _presence_inconsistent(split, x, y, (entry, leave), name)
    gadget["split"] = _var(leave)
    return _finish(
        GeneratedInstance(
            reduction=name,
            formula=formula,
            truth=has_simple_path_through_node(graph, x, y, node),
            focus=focus_id,
            gadget=gadget,
            source={"graph": graph.to_dict(), "x": x, "y": y, "node": node},
        )
    )


def gen_presence_implied_cyclic(graph: Digraph, s1: int, t1: int, s2: int, t2: int) -> GeneratedInstance:
    """Focus ``l1 -> l2`` in some I.E.S. iff vertex-disjoint ``s1 => t1`` and ``s2 => t2`` paths exist.

    Around the graph: ``l1 -> l2 -> s1``, ``l1 -> l3 -> x``, ``l3 -> s2``, ``t2 -> l1`` and
    ``t1 -> l4 -> -x``, ``l4 -> l1``. Every I.E.S. keeps ``l1 -> l3 -> s2``, the only ways
    to ``x`` and from ``l3`` towards ``-x``. The focus is then needed exactly when ``s2``
    reaches ``t1`` only back through ``l1``, which leaves an ``s2 => t2`` path clear of an
    ``s1 => t1`` path.
    """
    name = "presence-implied-cyclic"
    _require(len({s1, t1, s2, t2}) == 4, "s1, t1, s2, t2 must be distinct", name)
    nx_graph = graph.to_networkx()
    for node in range(graph.num_nodes):
        _require(
            nx.has_path(nx_graph, node, t1) or nx.has_path(nx_graph, node, t2),
            f"node {node} reaches neither t1 nor t2",
            name,
        )
    _require(
        nx.has_path(nx_graph, s1, t1) or nx.has_path(nx_graph, s2, t1),
        "t1 must be reachable from s1 or s2",
        name,
    )

    builder = _Builder(graph.num_nodes)
    for source, target in graph.edges:
        builder.edge(_var(source), _var(target))
    l1 = builder.fresh("l1")
    l2 = builder.fresh("l2")
    l3 = builder.fresh("l3")
    l4 = builder.fresh("l4")
    x = builder.fresh("x")
    focus_row = builder.edge(l1, l2)
    builder.edge(l2, _var(s1))
    builder.edge(l1, l3)
    builder.edge(l3, x)
    builder.edge(l3, _var(s2))
    builder.edge(_var(t2), l1)
    builder.edge(_var(t1), l4)
    builder.edge(l4, -x)
    builder.edge(l4, l1)
    formula = builder.formula()
    return _finish(
        GeneratedInstance(
            reduction=name,
            formula=formula,
            truth=has_disjoint_paths(graph, s1, t1, s2, t2),
            focus=formula.find(focus_row).id,
            gadget=builder.gadget,
            source={"graph": graph.to_dict(), "s1": s1, "t1": t1, "s2": s2, "t2": t2},
        )
    )


def gen_presence_3sat(clauses: Sequence[Sequence[int]]) -> GeneratedInstance:
    """Focus ``l1 -> l2`` in some I.E.S. of the gadget iff the 3SAT instance is satisfiable.

    Per variable ``i`` the nodes ``x_i``, ``x_i+``, ``x_i-``; per clause ``j`` the node
    ``c_j``. Pinned edges: ``l1 -> x_i``, ``x_i+/- -> l1``, ``l2 -> x_i+/-``, ``c_j -> l2``.
    Plain edges: ``x_i -> x_i+/-`` and ``x_i+ -> c_j`` (``x_i- -> c_j``) when ``x_i``
    (``-x_i``) occurs in clause ``j``.
    """
    name = "presence-3sat"
    _require(len(clauses) > 0, "3SAT instance needs at least one clause", name)
    for clause in clauses:
        _require(0 < len(clause) <= 3 and all(literal != 0 for literal in clause), f"bad 3SAT clause {clause}", name)
    num_vars = max(abs(literal) for clause in clauses for literal in clause)

    builder = _Builder(0)
    l1 = builder.fresh("l1")
    l2 = builder.fresh("l2")
    nodes: Dict[str, int] = {}
    for index in range(1, num_vars + 1):
        for suffix in ("", "+", "-"):
            nodes[f"x{index}{suffix}"] = builder.fresh(f"x{index}{suffix}")
    for number in range(1, len(clauses) + 1):
        nodes[f"c{number}"] = builder.fresh(f"c{number}")

    focus_row = builder.edge(l1, l2)
    for index in range(1, num_vars + 1):
        base, positive, negative = nodes[f"x{index}"], nodes[f"x{index}+"], nodes[f"x{index}-"]
        builder.pinned(l1, base, f"pin_l1_x{index}")
        builder.pinned(positive, l1, f"pin_x{index}+_l1")
        builder.pinned(negative, l1, f"pin_x{index}-_l1")
        builder.pinned(l2, positive, f"pin_l2_x{index}+")
        builder.pinned(l2, negative, f"pin_l2_x{index}-")
        builder.edge(base, positive)
        builder.edge(base, negative)
    for number, clause in enumerate(clauses, start=1):
        target = nodes[f"c{number}"]
        builder.pinned(target, l2, f"pin_c{number}_l2")
        for literal in clause:
            sign = "+" if literal > 0 else "-"
            builder.edge(nodes[f"x{abs(literal)}{sign}"], target)

    formula = builder.formula()
    return _finish(
        GeneratedInstance(
            reduction=name,
            formula=formula,
            truth=is_satisfiable(clauses, num_vars),
            focus=formula.find(focus_row).id,
            gadget=builder.gadget,
            source={"clauses": [list(clause) for clause in clauses], "num_vars": num_vars},
        )
    )


def gen_horn_vertex_cover(graph: UndirectedGraph) -> GeneratedInstance:
    """Horn formula whose minimal inconsistent subsets have ``m + 1 + |cover|`` clauses."""
    name = "horn-vertex-cover"
    builder = _Builder(graph.num_nodes)
    for node in range(graph.num_nodes):
        builder.rows.append((_var(node),))
    markers = []
    for number, (u, v) in enumerate(graph.edges, start=1):
        marker = builder.fresh(f"a{number}")
        markers.append(marker)
        builder.edge(_var(u), marker)
        builder.edge(_var(v), marker)
    if markers:
        builder.rows.append(tuple(-marker for marker in markers))
    cover = min_vertex_cover(graph)
    edges = len(graph.edges)
    return _finish(
        GeneratedInstance(
            reduction=name,
            formula=builder.formula(),
            truth=cover,
            k=2 * (edges + 1 + cover) if edges else None,
            gadget=builder.gadget,
            source={"graph": graph.to_dict()},
        )
    )
