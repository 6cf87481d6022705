from __future__ import annotations

import pytest
from hypothesis import given, settings

from app.lib.cnf import Literal
from app.lib.implication_graph import (
    CycleStatus,
    build_for,
    cyclicity,
    literal_sets,
    reachable,
    shared_successors,
    to_dot,
    up_bottom,
    up_closure,
)
from tests.formulas import CLASH_PAIR_ROWS, CYCLE_EXITS_ROWS, binary_formulas, formula_of


def test_each_clause_contributes_two_dual_edges():
    graph = build_for(formula_of([(1, 2)]))
    assert graph.size == 4
    assert graph.edge_count == 2
    assert graph.successors(Literal(1, False)) == [(Literal(2), 1)]
    assert graph.successors(Literal(2, False)) == [(Literal(1), 1)]


def test_up_closure_follows_paths_and_records_them():
    formula = formula_of([(-1, 2), (-2, 3)])
    graph = build_for(formula)
    closure = up_closure(graph, Literal(1))
    assert closure.literals() == frozenset({Literal(1), Literal(2), Literal(3)})
    assert [edge[2] for edge in closure.path_to(Literal(3))] == [1, 2]
    blocked = up_closure(graph, Literal(1), excluded={2})
    assert Literal(3) not in blocked


def test_reachable_backwards():
    graph = build_for(formula_of([(-1, 2), (-2, 3)]))
    assert reachable(graph, Literal(3), reverse=True) == frozenset({Literal(1).index, Literal(2).index, Literal(3).index})


def test_up_bottom_reports_first_clash_of_each_side():
    formula = formula_of(CLASH_PAIR_ROWS)
    graph = build_for(formula)
    from_x = up_bottom(graph, Literal(1))
    from_not_x = up_bottom(graph, Literal(1, False))
    assert from_x is not None and from_x.clash_var == 2
    assert from_not_x is not None and from_not_x.clash_var == 4
    assert from_x.path[0] == Literal(1)
    assert from_x.path[-1] == -from_x.pivot
    assert up_bottom(graph, Literal(1), excluded={formula.find((-2, 3)).id}) is None


def test_clash_pair_formula_is_acyclic():
    status = cyclicity(build_for(formula_of(CLASH_PAIR_ROWS)))
    assert status.status is CycleStatus.ACYCLIC


def test_equivalence_is_a_cycle():
    status = cyclicity(build_for(formula_of([(-1, 2), (-2, 1)])))
    assert status.is_cyclic
    assert set(status.cycle) <= {Literal(1), Literal(2), Literal(1, False), Literal(2, False)}


def test_chain_is_acyclic():
    assert cyclicity(build_for(formula_of([(-1, 2), (-2, 3), (-1, 3)]))).is_acyclic


def test_literal_sets_of_cycle_with_two_refuting_exits():
    formula = formula_of(CYCLE_EXITS_ROWS)
    graph = build_for(formula)
    sets = literal_sets(graph, Literal(1))
    assert sets.successors == frozenset({Literal(2), Literal(3)})
    assert sets.refuting == frozenset({Literal(2), Literal(3)})
    assert sets.opposing_pairs == frozenset()
    assert sets.own_clauses == frozenset({formula.find((-1, 2)).id, formula.find((-1, 3)).id})
    assert sets.rest_clauses == formula.ids - sets.own_clauses
    assert sets.cycle_companions == frozenset({Literal(1), Literal(2)})
    assert sets.cycle_frontier == frozenset({Literal(3), Literal(4), Literal(4, False)})


def test_unreached_successors_are_the_first_layer():
    # 1 -> 2, 1 -> 3, 2 -> 3: 3 is reached from 2
    graph = build_for(formula_of([(-1, 2), (-1, 3), (-2, 3)]))
    sets = literal_sets(graph, Literal(1))
    assert sets.unreached == frozenset({Literal(2)})


def test_shared_successors_marks_the_shortcut():
    formula = formula_of([(-1, 2), (-1, 3), (-2, 3)])
    marks = shared_successors(build_for(formula), Literal(1))
    assert marks == {formula.find((-1, 2)).id: False, formula.find((-1, 3)).id: True}


def test_shared_successors_of_a_sink_is_empty():
    formula = formula_of([(-1, 2)])
    assert shared_successors(build_for(formula), Literal(2)) == {}


def test_dot_output_names_literals_and_clauses():
    dot = to_dot(build_for(formula_of([(-1, 2)])))
    assert dot.startswith("digraph implication {")
    assert '"1" -> "2" [label="1"];' in dot
    assert '"-2" -> "-1" [label="1"];' in dot


@pytest.mark.parametrize("start", [Literal(1), Literal(1, False)])
def test_witness_walk_ends_at_the_negated_clash_variable(start):
    formula = formula_of(CLASH_PAIR_ROWS)
    witness = up_bottom(build_for(formula), start)
    assert witness is not None
    assert witness.path[-1].var == witness.clash_var
    assert Literal(witness.clash_var, True) in witness.path
    assert Literal(witness.clash_var, False) in witness.path
    assert len(witness.clause_ids) == len(witness.path) - 1


@given(binary_formulas(units=False))
@settings(max_examples=60, deadline=None)
def test_every_witness_names_a_variable_seen_in_both_polarities(formula):
    graph = build_for(formula)
    for var in sorted(formula.variables()):
        for start in (Literal(var), Literal(var, False)):
            witness = up_bottom(graph, start)
            if witness is None:
                continue
            assert witness.path[0] == start
            assert witness.path[-1] == -witness.pivot
            assert witness.pivot in witness.path
            assert witness.path[-1].var == witness.clash_var
