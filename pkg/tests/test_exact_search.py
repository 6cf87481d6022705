from __future__ import annotations

import pytest
from hypothesis import given, settings

from app.lib.cnf import Formula
from app.lib.errors import PreconditionError, SearchExhausted
from app.lib.exact_search import (
    SearchBudget,
    brute_force_ies,
    enumerate_ies,
    in_some_ies_exact,
    min_ies_size_exact,
    truth_table_equivalent,
    truth_table_is_ies,
)
from tests.formulas import CYCLE_EXITS_ROWS, binary_formulas, formula_of, horn_formulas


def test_cycle_with_two_exits_has_three_ies():
    formula = formula_of(CYCLE_EXITS_ROWS)
    found = enumerate_ies(formula, cross_check=True)
    assert found == [frozenset({2, 4, 5, 6, 7}), frozenset({3, 4, 5, 6, 7}), frozenset({1, 3, 6, 7})]


def test_cycle_with_two_exits_minimum():
    result = min_ies_size_exact(formula_of(CYCLE_EXITS_ROWS), cross_check=True)
    assert result.ids == frozenset({1, 3, 6, 7})
    assert result.half_units == 8
    assert result.clauses == 4


def test_presence_by_search():
    formula = formula_of([(-1, 2), (-2, 3), (-1, 3)])
    assert in_some_ies_exact(formula, 1)
    assert not in_some_ies_exact(formula, 2)


def test_cap_applies_to_undecided_clauses_only():
    # a long irredundant chain plus one shortcut: a single undecided clause
    rows = [(-var, var + 1) for var in range(1, 30)] + [(-1, 3)]
    formula = formula_of(rows)
    assert enumerate_ies(formula, SearchBudget(max_clauses=1)) == [formula.ids - {formula.find((-1, 3)).id}]


def test_budget_exhaustion_is_not_a_verdict():
    formula = formula_of([(-1, 2), (-2, 3), (-1, 3), (-3, 4), (-2, 4)])
    with pytest.raises(SearchExhausted) as excinfo:
        enumerate_ies(formula, SearchBudget(max_clauses=1))
    assert excinfo.value.reason == "max_clauses"
    with pytest.raises(SearchExhausted) as excinfo:
        min_ies_size_exact(formula, SearchBudget(max_nodes=1))
    assert excinfo.value.reason == "max_nodes"


def test_truth_tables_cover_small_formulas_only():
    wide = Formula.from_ints([(-var, var + 1) for var in range(1, 18)])
    with pytest.raises(PreconditionError):
        truth_table_equivalent(wide, wide)


def test_equivalence_by_truth_table_matches_names():
    assert truth_table_equivalent(formula_of([(-1, 2), (-2, 3), (-1, 3)]), formula_of([(-1, 2), (-2, 3)]))
    assert not truth_table_equivalent(formula_of([(-1, 2)]), formula_of([(-2, 1)]))


@settings(max_examples=60, deadline=None)
@given(binary_formulas())
def test_enumeration_matches_brute_force(formula):
    expected = set(brute_force_ies(formula))
    found = enumerate_ies(formula)
    assert set(found) == expected
    assert len(found) == len(expected)
    smallest = min(len(ids) for ids in expected)
    result = min_ies_size_exact(formula)
    assert result.clauses == smallest
    assert truth_table_is_ies(formula, result.ids)


@settings(max_examples=40, deadline=None)
@given(horn_formulas(max_clauses=5))
def test_horn_enumeration_matches_brute_force(formula):
    assert set(enumerate_ies(formula, prefer_horn=True)) == set(brute_force_ies(formula))


@settings(max_examples=40, deadline=None)
@given(binary_formulas(max_clauses=6))
def test_presence_by_search_matches_brute_force(formula):
    found = brute_force_ies(formula)
    for clause_id in sorted(formula.ids):
        assert in_some_ies_exact(formula, clause_id) == any(clause_id in ids for ids in found)
