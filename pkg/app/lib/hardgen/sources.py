"""Source problems of the reductions: brute-force solvers and random instances.

The solvers never look at a formula; they are the independent side of every
cross-validation.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .models import Digraph, Edge, UndirectedGraph


def has_simple_cycle_through(graph: Digraph, first: int, second: int) -> bool:
    return any(first in cycle and second in cycle for cycle in nx.simple_cycles(graph.to_networkx()))


def min_equivalent_subgraph_size(graph: Digraph) -> int:
    """Fewest edges of a spanning subgraph that keeps ``graph`` strongly connected."""
    if graph.num_nodes <= 1:
        return 0
    for size in range(graph.num_nodes, len(graph.edges) + 1):
        for chosen in combinations(graph.edges, size):
            candidate = nx.DiGraph()
            candidate.add_nodes_from(range(graph.num_nodes))
            candidate.add_edges_from(chosen)
            if nx.is_strongly_connected(candidate):
                return size
    raise ValueError("graph is not strongly connected")


def _paths(graph: Digraph, source: int, target: int) -> List[List[int]]:
    return list(nx.all_simple_paths(graph.to_networkx(), source, target))


def has_simple_path_through_edge(graph: Digraph, source: int, target: int, edge: Edge) -> bool:
    return any(edge in zip(path, path[1:]) for path in _paths(graph, source, target))


def has_simple_path_through_node(graph: Digraph, source: int, target: int, node: int) -> bool:
    return any(node in path for path in _paths(graph, source, target))


def has_disjoint_paths(graph: Digraph, s1: int, t1: int, s2: int, t2: int) -> bool:
    """Vertex-disjoint ``s1 => t1`` and ``s2 => t2`` paths."""
    nx_graph = graph.to_networkx()
    for path in nx.all_simple_paths(nx_graph, s1, t1):
        used = set(path)
        if s2 in used or t2 in used:
            continue
        rest = nx_graph.subgraph(set(nx_graph) - used)
        if nx.has_path(rest, s2, t2):
            return True
    return False


def is_satisfiable(clauses: Sequence[Sequence[int]], num_vars: int) -> bool:
    for values in product((False, True), repeat=num_vars):
        if all(any(values[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in clauses):
            return True
    return False


def min_vertex_cover(graph: UndirectedGraph) -> int:
    for size in range(graph.num_nodes + 1):
        for cover in combinations(range(graph.num_nodes), size):
            chosen = set(cover)
            if all(u in chosen or v in chosen for u, v in graph.edges):
                return size
    return graph.num_nodes


def random_digraph(rng: np.random.Generator, num_nodes: int, edge_probability: float) -> Digraph:
    edges = [
        (source, target)
        for source in range(num_nodes)
        for target in range(num_nodes)
        if source != target and rng.random() < edge_probability
    ]
    return Digraph(num_nodes, tuple(edges))


def random_strongly_connected(rng: np.random.Generator, num_nodes: int, edge_probability: float) -> Digraph:
    """A random Hamiltonian cycle plus independent extra edges."""
    order = [int(node) for node in rng.permutation(num_nodes)]
    edges = {(order[index], order[(index + 1) % num_nodes]) for index in range(num_nodes)}
    edges.update(random_digraph(rng, num_nodes, edge_probability).edges)
    return Digraph(num_nodes, tuple(edges))


def random_graph(rng: np.random.Generator, num_nodes: int, edge_probability: float) -> UndirectedGraph:
    edges = [pair for pair in combinations(range(num_nodes), 2) if rng.random() < edge_probability]
    return UndirectedGraph(num_nodes, tuple(edges))


def random_3sat(rng: np.random.Generator, num_vars: int, num_clauses: int) -> List[Tuple[int, ...]]:
    clauses = []
    width = min(3, num_vars)
    for _ in range(num_clauses):
        variables = rng.choice(np.arange(1, num_vars + 1), size=width, replace=False)
        signs = rng.integers(0, 2, size=width)
        clauses.append(tuple(int(var) if sign else -int(var) for var, sign in zip(variables, signs)))
    return clauses


def pick_distinct(rng: np.random.Generator, num_nodes: int, count: int) -> Optional[List[int]]:
    if num_nodes < count:
        return None
    return [int(node) for node in rng.choice(num_nodes, size=count, replace=False)]
