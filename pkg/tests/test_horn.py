from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.lib.cnf import Clause, Formula, Literal
from app.lib.errors import PreconditionError
from app.lib.exact_search import brute_force_ies, truth_table_entails, truth_table_is_ies, truth_table_models
from app.lib.horn import (
    HornOracle,
    horn_entails,
    horn_ies_basics,
    horn_implied_atoms,
    horn_is_consistent,
    horn_is_ies,
    horn_min_ies_size,
)
from tests.formulas import horn_formulas


def _triangle_cover() -> Formula:
    # nodes 1..3 as facts, one marker per edge, one clause refuting all markers
    return Formula.from_ints(
        [(1,), (2,), (3,), (-1, 4), (-2, 4), (-1, 5), (-3, 5), (-2, 6), (-3, 6), (-4, -5, -6)]
    )


def test_forward_chaining_derives_heads():
    formula = Formula.from_ints([(1,), (-1, 2), (-1, -2, 3)])
    assert horn_implied_atoms(formula) == frozenset({1, 2, 3})
    assert horn_entails(formula, [Literal(3)])
    assert not horn_entails(formula, [Literal(1, False)])


def test_entailment_of_a_horn_clause():
    formula = Formula.from_ints([(-1, 2), (-2, -3, 4)])
    assert horn_entails(formula, Clause.of(0, (-1, -3, 4)).lits)
    assert not horn_entails(formula, [Literal(4)])


def test_negative_clause_gives_inconsistency():
    formula = Formula.from_ints([(1,), (2,), (-1, -2, -3), (3,)])
    assert not horn_is_consistent(formula)
    with pytest.raises(PreconditionError):
        horn_implied_atoms(formula)
    assert HornOracle(formula).is_consistent(excluded={formula.find((3,)).id})


def test_non_horn_formula_is_rejected():
    with pytest.raises(PreconditionError):
        HornOracle(Formula.from_ints([(1, 2)]))


def test_vertex_cover_formula_minimum():
    formula = _triangle_cover()
    assert not horn_is_consistent(formula)
    result = horn_min_ies_size(formula)
    # two cover nodes, three edges, the refuting clause
    assert result.clauses == 6
    assert result.half_units == 12
    assert horn_is_ies(formula, result.ids)


def test_vertex_cover_formula_basics():
    basics = horn_ies_basics(_triangle_cover())
    assert not basics.unique
    assert [cid for cid, flag in basics.in_all.items() if flag] == [10]


def test_horn_is_ies_on_a_derived_fact():
    formula = Formula.from_ints([(1,), (-1, 2), (2,)])
    fact, rule, derived = formula.find((1,)).id, formula.find((-1, 2)).id, formula.find((2,)).id
    assert horn_is_ies(formula, {fact, rule})
    assert not horn_is_ies(formula, formula.ids)
    assert not horn_is_ies(formula, {fact})
    assert truth_table_is_ies(formula, {fact, rule})
    # the fact and the derived atom are an equally good pair
    assert horn_is_ies(formula, {fact, derived})


@settings(max_examples=80, deadline=None)
@given(horn_formulas(), st.data())
def test_forward_chaining_agrees_with_truth_tables(formula, data):
    oracle = HornOracle(formula)
    assert oracle.is_consistent() == bool(truth_table_models(formula).any())
    clause = data.draw(st.sampled_from(formula.clauses))
    assert oracle.entails_clause(clause, excluded={clause.id}) == truth_table_entails(formula.without(clause.id), clause)


@settings(max_examples=40, deadline=None)
@given(horn_formulas(max_clauses=5))
def test_horn_ies_check_agrees_with_brute_force(formula):
    found = brute_force_ies(formula)
    for ids in found:
        assert horn_is_ies(formula, ids)
    assert horn_ies_basics(formula).unique == (len(found) == 1)
