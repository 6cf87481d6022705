from __future__ import annotations

import pytest

from app.lib.cnf import Literal
from app.lib.config import GeneratorConfig
from app.lib.entailment import classify
from app.lib.errors import GeneratorError
from app.lib.exact_search import SearchBudget, in_some_ies_exact, min_ies_size_exact
from app.lib.hardgen import (
    Digraph,
    UndirectedGraph,
    gen_horn_vertex_cover,
    gen_presence_3sat,
    gen_presence_implied_cyclic,
    gen_presence_inconsistent,
    gen_presence_inconsistent_node,
    gen_size_cyclic_implied,
    gen_size_strongly_connected,
    generate,
    pin_edge,
    reduction_names,
    split_node,
)
from app.lib.hardgen.sources import (
    has_disjoint_paths,
    has_simple_path_through_edge,
    is_satisfiable,
    min_equivalent_subgraph_size,
    min_vertex_cover,
)
from app.lib.horn import horn_min_ies_size
from app.lib.ies import in_all_ies, size_cyclic_implied
from app.lib.implication_graph import build_for
from app.lib.reports import Regime

WIDE_BUDGET = SearchBudget(max_clauses=40, max_nodes=2_000_000)


def test_pinned_edge_goes_through_the_fresh_variable():
    assert pin_edge(3, 5, 9) == ((-3, 9), (-9, 5))


def test_split_node_moves_out_edges():
    graph = Digraph(3, ((0, 1), (1, 2)))
    split, entry, leave = split_node(graph, 1)
    assert (entry, leave) == (1, 3)
    assert split.edges == ((0, 1), (1, 3), (3, 2))


def test_source_solvers():
    square = Digraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2)))
    assert min_equivalent_subgraph_size(square) == 4
    assert has_simple_path_through_edge(square, 0, 3, (0, 2))
    assert not has_simple_path_through_edge(square, 0, 1, (2, 3))
    assert has_disjoint_paths(Digraph(4, ((0, 1), (2, 3))), 0, 1, 2, 3)
    assert not has_disjoint_paths(Digraph(5, ((0, 4), (4, 1), (2, 4), (4, 3))), 0, 1, 2, 3)
    assert is_satisfiable([(1, 2), (-1,)], 2)
    assert not is_satisfiable([(1,), (-1,)], 1)
    assert min_vertex_cover(UndirectedGraph(3, ((0, 1), (1, 2)))) == 1


def test_graph_models_reject_self_loops():
    with pytest.raises(ValueError):
        Digraph(2, ((1, 1),))


def test_strongly_connected_reduction_size_matches_search():
    graph = Digraph(3, ((0, 1), (1, 2), (2, 0), (0, 2), (2, 1)))
    instance = gen_size_strongly_connected(graph)
    assert instance.truth == 3
    assert instance.k == 6
    assert min_ies_size_exact(instance.formula).half_units == instance.k


def test_strongly_connected_reduction_precondition():
    with pytest.raises(GeneratorError):
        gen_size_strongly_connected(Digraph(3, ((0, 1), (1, 2))))


def test_cyclic_implied_reduction_structure():
    graph = Digraph(4, ((0, 1), (1, 0), (1, 2), (3, 0)))
    instance = gen_size_cyclic_implied(graph, 0, 1)
    # node 2 cannot reach x and is dropped
    assert instance.source["kept"] == [0, 1, 3]
    assert instance.truth is True
    assert instance.k == 10
    assert instance.gadget["z"] == 4
    cls = classify(instance.formula)
    assert cls.regime is Regime.CONSISTENT_IMPLYING
    assert Literal(instance.gadget["x"], False) in cls.implied


def test_cyclic_implied_reduction_needs_mutual_reachability():
    with pytest.raises(GeneratorError):
        gen_size_cyclic_implied(Digraph(2, ((0, 1),)), 0, 1)


def test_presence_inconsistent_reduction_matches_search():
    graph = Digraph(4, ((0, 1), (1, 3), (0, 2), (2, 1)))
    on_path = gen_presence_inconsistent(graph, 0, 3, (2, 1))
    assert on_path.truth is True
    assert in_some_ies_exact(on_path.formula, on_path.focus)
    assert classify(on_path.formula).regime is Regime.INCONSISTENT

    off_path = gen_presence_inconsistent(Digraph(4, ((0, 1), (1, 3), (3, 2))), 0, 3, (3, 2))
    assert off_path.truth is False
    assert not in_some_ies_exact(off_path.formula, off_path.focus)


def test_presence_inconsistent_reduction_preconditions():
    graph = Digraph(3, ((0, 1),))
    with pytest.raises(GeneratorError):
        gen_presence_inconsistent(graph, 0, 2, (0, 1))
    with pytest.raises(GeneratorError):
        gen_presence_inconsistent(graph, 0, 1, (1, 2))


def test_node_presence_reduction_splits_the_node():
    graph = Digraph(4, ((0, 2), (2, 3), (0, 3)))
    instance = gen_presence_inconsistent_node(graph, 0, 3, 2)
    assert instance.truth is True
    assert instance.gadget["split"] == 5
    assert instance.formula.clause(instance.focus).to_ints() == (-3, 5)
    assert in_some_ies_exact(instance.formula, instance.focus)
    with pytest.raises(GeneratorError):
        gen_presence_inconsistent_node(graph, 0, 3, 3)


def test_implied_cyclic_reduction_structure():
    graph = Digraph(4, ((0, 1), (2, 3)))
    instance = gen_presence_implied_cyclic(graph, 0, 1, 2, 3)
    assert instance.truth is True
    gadget = instance.gadget
    assert instance.formula.clause(instance.focus).to_ints() == (-gadget["l1"], gadget["l2"])
    cls = classify(instance.formula)
    assert cls.consistent
    assert Literal(gadget["l1"], False) in cls.implied
    assert Literal(gadget["x"]) not in cls.implied
    assert Literal(gadget["x"], False) not in cls.implied


def test_implied_cyclic_reduction_preconditions():
    # node 2 reaches neither target
    with pytest.raises(GeneratorError):
        gen_presence_implied_cyclic(Digraph(4, ((0, 1),)), 0, 1, 2, 3)
    # neither source reaches t1
    with pytest.raises(GeneratorError):
        gen_presence_implied_cyclic(Digraph(4, ((0, 3), (2, 3))), 0, 1, 2, 3)
    with pytest.raises(GeneratorError):
        gen_presence_implied_cyclic(Digraph(4, ((0, 1), (2, 3))), 0, 1, 0, 3)


@pytest.mark.parametrize(
    "edges, truth",
    [
        (((0, 1), (2, 3)), True),
        # bowtie: both paths must cross node 4
        (((0, 4), (4, 1), (2, 4), (4, 3)), False),
        (((0, 4), (4, 1), (2, 5), (5, 3), (2, 4), (4, 3)), True),
        (((0, 4), (4, 1), (2, 4), (4, 3), (0, 5), (5, 4), (2, 5)), False),
        # s1 cannot reach t1 at all
        (((0, 3), (2, 1), (2, 3)), False),
    ],
)
def test_implied_cyclic_reduction_matches_search(edges, truth):
    num_nodes = 1 + max(max(edge) for edge in edges)
    graph = Digraph(num_nodes, edges)
    instance = gen_presence_implied_cyclic(graph, 0, 1, 2, 3)
    assert instance.truth is truth
    assert has_disjoint_paths(graph, 0, 1, 2, 3) is truth
    assert in_some_ies_exact(instance.formula, instance.focus, WIDE_BUDGET) is truth


@pytest.mark.parametrize("seed", range(6))
def test_random_implied_cyclic_instances_match_search(seed):
    instance = generate("presence-implied-cyclic", GeneratorConfig(nodes=5), seed=seed)
    assert in_some_ies_exact(instance.formula, instance.focus, WIDE_BUDGET) is instance.truth


@pytest.mark.parametrize(
    "clauses, truth",
    [
        ([(1, -2), (2,)], True),
        ([(1,), (-1,)], False),
        ([(1, 2), (1, -2), (-1, 2), (-1, -2)], False),
        ([(1, 2, -3), (-1, 3), (-2, -3)], True),
    ],
)
def test_3sat_reduction_matches_search(clauses, truth):
    instance = gen_presence_3sat(clauses)
    assert instance.truth is truth
    assert in_some_ies_exact(instance.formula, instance.focus, WIDE_BUDGET) is truth


@pytest.mark.parametrize("seed", range(4))
def test_random_3sat_instances_match_search(seed):
    instance = generate("presence-3sat", GeneratorConfig(sat_vars=3, sat_clauses=3), seed=seed)
    assert in_some_ies_exact(instance.formula, instance.focus, WIDE_BUDGET) is instance.truth


def test_3sat_reduction_structure():
    instance = gen_presence_3sat([(1, -2), (2,)])
    gadget = instance.gadget
    assert instance.truth is True
    assert instance.formula.clause(instance.focus).to_ints() == (-gadget["l1"], gadget["l2"])
    cls = classify(instance.formula)
    assert cls.regime is Regime.CONSISTENT_NO_IMPLIED
    assert cls.cyclic
    assert gen_presence_3sat([(1,), (-1,)]).truth is False


def test_vertex_cover_reduction_matches_search():
    instance = gen_horn_vertex_cover(UndirectedGraph(3, ((0, 1), (0, 2), (1, 2))))
    assert instance.truth == 2
    assert instance.k == 12
    assert horn_min_ies_size(instance.formula).half_units == instance.k


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_vertex_cover_instances_match_search(seed):
    instance = generate("horn-vertex-cover", GeneratorConfig(nodes=4, edge_probability=0.5), seed=seed)
    if instance.k is None:
        return
    assert horn_min_ies_size(instance.formula).half_units == instance.k


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_strongly_connected_instances_match_search(seed):
    instance = generate("size-strongly-connected", GeneratorConfig(nodes=4, edge_probability=0.3), seed=seed)
    assert min_ies_size_exact(instance.formula).half_units == instance.k


def test_registry_names_and_errors():
    assert reduction_names() == sorted(reduction_names())
    assert "presence-3sat" in reduction_names()
    with pytest.raises(GeneratorError):
        generate("no-such-reduction")


def test_generation_is_seeded():
    first = generate("presence-3sat", seed=7)
    second = generate("presence-3sat", seed=7)
    assert first.sidecar() == second.sidecar()
    assert first.formula == second.formula


@pytest.mark.parametrize("name", reduction_names())
def test_every_reduction_generates_with_defaults(name):
    instance = generate(name, seed=3)
    assert instance.reduction == name
    sidecar = instance.sidecar()
    assert set(sidecar) == {"reduction", "focus", "k", "truth", "gadget", "source"}


def test_cyclic_implied_reduction_answers_agree_with_search():
    found = gen_size_cyclic_implied(Digraph(3, ((0, 1), (1, 0))), 0, 1)
    # x and y only meet through node 1, so no simple cycle visits both
    shared = gen_size_cyclic_implied(Digraph(3, ((0, 1), (1, 2), (2, 1), (1, 0))), 0, 2)
    assert found.truth is True
    assert shared.truth is False
    for instance in (found, shared):
        smallest = min_ies_size_exact(instance.formula).half_units
        assert (smallest <= instance.k) == instance.truth


def test_cyclic_implied_component_cost_is_left_to_search():
    instance = gen_size_cyclic_implied(Digraph(4, ((0, 1), (1, 0), (1, 2), (3, 0))), 0, 1)
    size = size_cyclic_implied(instance.formula, Literal(instance.gadget["x"]))
    assert size.needs_search
    assert size.case == "distinct_exit_nodes"


def test_strongly_connected_outputs_are_consistent_without_implied_literals():
    instance = generate("size-strongly-connected", seed=5)
    cls = classify(instance.formula)
    assert cls.regime is Regime.CONSISTENT_NO_IMPLIED


def test_3sat_gadget_makes_every_variable_equivalent():
    instance = gen_presence_3sat([(1, -2, 3), (-1, 2), (-3,)])
    cls = classify(instance.formula)
    assert cls.regime is Regime.CONSISTENT_NO_IMPLIED
    component = build_for(instance.formula).component(Literal(1))
    assert {Literal(var).index for var in range(1, instance.formula.n + 1)} <= component


def test_pinned_edges_are_in_every_ies():
    instance = gen_presence_3sat([(1, -2), (2,)])
    formula = instance.formula
    pins = [var for name, var in instance.gadget.items() if name.startswith("pin_")]
    assert pins
    for var in pins:
        ids = [clause.id for clause in formula.clauses if var in clause.variables]
        assert len(ids) == 2
        assert all(in_all_ies(formula, cid) for cid in ids)
