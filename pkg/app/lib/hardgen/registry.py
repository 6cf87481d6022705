from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional

import networkx as nx
import numpy as np

from ..config import GeneratorConfig
from ..errors import GeneratorError
from .models import Digraph, GeneratedInstance
from .reductions import (
    gen_horn_vertex_cover,
    gen_presence_3sat,
    gen_presence_implied_cyclic,
    gen_presence_inconsistent,
    gen_presence_inconsistent_node,
    gen_size_cyclic_implied,
    gen_size_strongly_connected,
)
from .sources import (
    pick_distinct,
    random_3sat,
    random_digraph,
    random_graph,
    random_strongly_connected,
)

logger = logging.getLogger("clausetrim.hardgen")

Factory = Callable[[np.random.Generator, GeneratorConfig], GeneratedInstance]


def _nodes(rng: np.random.Generator, num_nodes: int, count: int, reduction: str) -> List[int]:
    picked = pick_distinct(rng, num_nodes, count)
    if picked is None:
        raise GeneratorError(f"need at least {count} nodes", reduction=reduction)
    return picked


def _size_cyclic_implied(rng: np.random.Generator, config: GeneratorConfig) -> GeneratedInstance:
    graph = random_digraph(rng, config.nodes, config.edge_probability)
    x, y = _nodes(rng, graph.num_nodes, 2, "size-cyclic-implied")
    return gen_size_cyclic_implied(graph, x, y)


def _size_strongly_connected(rng: np.random.Generator, config: GeneratorConfig) -> GeneratedInstance:
    return gen_size_strongly_connected(random_strongly_connected(rng, config.nodes, config.edge_probability))


def _presence_inconsistent(rng: np.random.Generator, config: GeneratorConfig) -> GeneratedInstance:
    graph = random_digraph(rng, config.nodes, config.edge_probability)
    if not graph.edges:
        raise GeneratorError("graph has no edges", reduction="presence-inconsistent")
    x, y = _nodes(rng, graph.num_nodes, 2, "presence-inconsistent")
    focus = graph.edges[int(rng.integers(len(graph.edges)))]
    return gen_presence_inconsistent(graph, x, y, focus)


def _presence_inconsistent_node(rng: np.random.Generator, config: GeneratorConfig) -> GeneratedInstance:
    graph = random_digraph(rng, config.nodes, config.edge_probability)
    x, y, node = _nodes(rng, graph.num_nodes, 3, "presence-inconsistent-node")
    return gen_presence_inconsistent_node(graph, x, y, node)


def _presence_implied_cyclic(rng: np.random.Generator, config: GeneratorConfig) -> GeneratedInstance:
    graph = random_digraph(rng, config.nodes, config.edge_probability)
    s1, t1, s2, t2 = _nodes(rng, graph.num_nodes, 4, "presence-implied-cyclic")
    nx_graph = graph.to_networkx()
    # nodes reaching neither target get an edge to t1
    stranded = [
        node
        for node in range(graph.num_nodes)
        if not nx.has_path(nx_graph, node, t1) and not nx.has_path(nx_graph, node, t2)
    ]
    if stranded:
        graph = Digraph(graph.num_nodes, graph.edges + tuple((node, t1) for node in stranded))
    return gen_presence_implied_cyclic(graph, s1, t1, s2, t2)


def _presence_3sat(rng: np.random.Generator, config: GeneratorConfig) -> GeneratedInstance:
    return gen_presence_3sat(random_3sat(rng, config.sat_vars, config.sat_clauses))


def _horn_vertex_cover(rng: np.random.Generator, config: GeneratorConfig) -> GeneratedInstance:
    return gen_horn_vertex_cover(random_graph(rng, config.nodes, config.edge_probability))


REDUCTIONS: Dict[str, Factory] = {
    "size-cyclic-implied": _size_cyclic_implied,
    "size-strongly-connected": _size_strongly_connected,
    "presence-inconsistent": _presence_inconsistent,
    "presence-inconsistent-node": _presence_inconsistent_node,
    "presence-implied-cyclic": _presence_implied_cyclic,
    "presence-3sat": _presence_3sat,
    "horn-vertex-cover": _horn_vertex_cover,
}


def reduction_names() -> List[str]:
    return sorted(REDUCTIONS)


def generate(
    reduction: str,
    config: Optional[GeneratorConfig] = None,
    *,
    seed: Optional[int] = None,
) -> GeneratedInstance:
    """Draw random source instances until one meets the reduction's preconditions."""
    config = config or GeneratorConfig()
    factory = REDUCTIONS.get(reduction)
    if factory is None:
        raise GeneratorError(
            f"unknown reduction '{reduction}'; choose from {', '.join(reduction_names())}",
            reduction=reduction,
        )
    rng = np.random.default_rng(config.seed if seed is None else seed)
    last_error: Optional[GeneratorError] = None
    for attempt in range(config.attempts):
        try:
            instance = factory(rng, config)
        except GeneratorError as exc:
            last_error = exc
            continue
        logger.info("hardgen.random.done", extra={"reduction": reduction, "attempts": attempt + 1})
        return instance
    raise GeneratorError(
        f"no valid instance after {config.attempts} attempts (last: {last_error})",
        reduction=reduction,
    )
