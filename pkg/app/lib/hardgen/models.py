from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple, Union

import networkx as nx

from ..cnf.models import Formula

Edge = Tuple[int, int]


def _normalize(num_nodes: int, edges: Iterable[Edge], *, directed: bool) -> Tuple[Edge, ...]:
    normalized = set()
    for source, target in edges:
        if source == target:
            raise ValueError(f"self-loop on node {source}")
        if not (0 <= source < num_nodes and 0 <= target < num_nodes):
            raise ValueError(f"edge ({source}, {target}) outside nodes 0..{num_nodes - 1}")
        normalized.add((source, target) if directed else (min(source, target), max(source, target)))
    return tuple(sorted(normalized))


@dataclass(frozen=True)
class Digraph:
    """Directed graph on nodes ``0..num_nodes-1``; node ``i`` becomes variable ``i + 1``."""

    num_nodes: int
    edges: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", _normalize(self.num_nodes, self.edges, directed=True))

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.num_nodes))
        graph.add_edges_from(self.edges)
        return graph

    def to_dict(self) -> Dict[str, object]:
        return {"num_nodes": self.num_nodes, "edges": [list(edge) for edge in self.edges]}


@dataclass(frozen=True)
class UndirectedGraph:
    num_nodes: int
    edges: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", _normalize(self.num_nodes, self.edges, directed=False))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_nodes))
        graph.add_edges_from(self.edges)
        return graph

    def to_dict(self) -> Dict[str, object]:
        return {"num_nodes": self.num_nodes, "edges": [list(edge) for edge in self.edges]}


@dataclass(frozen=True)
class GeneratedInstance:
    """A formula produced by a reduction together with the source problem's answer.

    ``truth`` is computed on the source graph or 3SAT instance, never on the formula.
    ``k`` is in half-units. ``gadget`` names the variables the construction added.
    """

    reduction: str
    formula: Formula
    truth: Union[bool, int]
    focus: Optional[int] = None
    k: Optional[int] = None
    gadget: Dict[str, int] = field(default_factory=dict)
    source: Dict[str, object] = field(default_factory=dict)

    def sidecar(self) -> Dict[str, object]:
        return {
            "reduction": self.reduction,
            "focus": self.focus,
            "k": self.k,
            "truth": self.truth,
            "gadget": dict(sorted(self.gadget.items())),
            "source": self.source,
        }
