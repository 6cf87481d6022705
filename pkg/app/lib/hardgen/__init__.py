from .models import Digraph, GeneratedInstance, UndirectedGraph
from .reductions import (
    gen_horn_vertex_cover,
    gen_presence_3sat,
    gen_presence_implied_cyclic,
    gen_presence_inconsistent,
    gen_presence_inconsistent_node,
    gen_size_cyclic_implied,
    gen_size_strongly_connected,
    pin_edge,
    split_node,
)
from .registry import REDUCTIONS, generate, reduction_names

__all__ = [
    "Digraph",
    "GeneratedInstance",
    "REDUCTIONS",
    "UndirectedGraph",
    "gen_horn_vertex_cover",
    "gen_presence_3sat",
    "gen_presence_implied_cyclic",
    "gen_presence_inconsistent",
    "gen_presence_inconsistent_node",
    "gen_size_cyclic_implied",
    "gen_size_strongly_connected",
    "generate",
    "pin_edge",
    "reduction_names",
    "split_node",
]
