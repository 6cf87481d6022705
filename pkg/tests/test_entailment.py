from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.lib.cnf import Clause, Formula, Literal
from app.lib.entailment import (
    EntailmentOracle,
    classify,
    decompose,
    entails_clause,
    entails_literal,
    equivalent,
    implied_literals,
    is_consistent,
)
from app.lib.errors import PreconditionError
from app.lib.exact_search import truth_table_entails, truth_table_models
from app.lib.reports import Regime
from tests.formulas import CLASH_PAIR_ROWS, CYCLE_EXITS_ROWS, binary_formulas, formula_of

# x=1, x1=2, x2=3, y=4
BOTH_BRANCHES_ROWS = [(1, 2), (1, 3), (-2, 4), (-3, -4), (-1, 4)]


def test_literal_refuted_on_both_branches_is_entailed():
    formula = formula_of(BOTH_BRANCHES_ROWS)
    assert entails_literal(formula, Literal(1))
    assert entails_literal(formula, Literal(4))
    assert not entails_literal(formula, Literal(2))
    assert implied_literals(formula) == frozenset({Literal(1), Literal(4), Literal(3, False)})


def test_entails_clause_by_path():
    formula = formula_of([(-1, 2), (-2, 3)])
    assert entails_clause(formula, Clause.of(0, (-1, 3)))
    assert not entails_clause(formula, Clause.of(0, (1, 3)))


def test_inconsistent_formula_entails_everything():
    formula = formula_of(CLASH_PAIR_ROWS)
    consistency = is_consistent(formula)
    assert not consistency
    assert consistency.witness is not None
    assert consistency.witness.positive.clash_var == 2
    assert consistency.witness.negative.clash_var == 4
    assert entails_literal(formula, Literal(2))


def test_oracle_answers_without_excluded_clauses():
    formula = formula_of(CLASH_PAIR_ROWS)
    oracle = EntailmentOracle(formula)
    assert not oracle.consistent()
    assert oracle.consistent({formula.find((-2, 3)).id})


def test_units_take_part_in_entailment():
    formula = formula_of([(1,), (-1, 2)])
    assert implied_literals(formula) == frozenset({Literal(1), Literal(2)})
    assert not EntailmentOracle(formula).entails_literal(Literal(2), excluded={formula.find((1,)).id})


def test_oracle_rejects_horn_only_formulas():
    with pytest.raises(PreconditionError):
        EntailmentOracle(Formula.from_ints([(-1, -2, 3)]))


def test_classify_regimes():
    assert classify(formula_of(CLASH_PAIR_ROWS)).regime is Regime.INCONSISTENT
    implying = classify(formula_of(CYCLE_EXITS_ROWS))
    assert implying.regime is Regime.CONSISTENT_IMPLYING
    assert implying.cyclic
    assert implying.implied == frozenset({Literal(1, False), Literal(2, False), Literal(3, False)})
    plain = classify(formula_of([(-1, 2), (-2, 3), (-1, 3)]))
    assert plain.regime is Regime.CONSISTENT_NO_IMPLIED
    assert plain.describe() == "consistent, acyclic"


def test_classification_dict_uses_original_names():
    formula = formula_of(CLASH_PAIR_ROWS)
    data = classify(formula).to_dict(formula)
    assert data["regime"] == "inconsistent"
    assert data["cyclic"] == "acyclic"
    assert data["clash_var"] == 1
    assert data["implied"] == []


def test_decompose_separates_clauses_with_implied_literals():
    formula = formula_of(BOTH_BRANCHES_ROWS + [(-5, 6)])
    parts = decompose(formula)
    assert parts.core.ids == frozenset({formula.find((-5, 6)).id})
    assert parts.touched.ids == formula.ids - parts.core.ids
    with_units = parts.with_units()
    assert with_units.m == 1 + len(parts.implied)
    assert all(clause.id > formula.max_id for clause in with_units.clauses if clause.is_unit)


def test_equivalent_matches_variables_by_name():
    first = formula_of([(-1, 2), (-2, 3), (-1, 3)])
    second = formula_of([(-1, 2), (-2, 3)])
    assert equivalent(first, second)
    assert not equivalent(second, formula_of([(-1, 2)]))


@settings(max_examples=80, deadline=None)
@given(binary_formulas(), st.data())
def test_oracle_agrees_with_truth_tables(formula, data):
    oracle = EntailmentOracle(formula)
    assert oracle.consistent() == bool(truth_table_models(formula).any())
    width = data.draw(st.integers(1, 2))
    variables = data.draw(st.lists(st.integers(1, formula.n), min_size=width, max_size=width, unique=True))
    query = Clause.of(0, [var if data.draw(st.booleans()) else -var for var in variables])
    assert oracle.entails_clause(query) == truth_table_entails(formula, query)
    dropped = data.draw(st.sampled_from(sorted(formula.ids)))
    assert oracle.entails_clause(query, excluded={dropped}) == truth_table_entails(formula.without(dropped), query)


@settings(max_examples=80, deadline=None)
@given(binary_formulas())
def test_implied_literals_agree_with_truth_tables(formula):
    oracle = EntailmentOracle(formula)
    if not oracle.consistent():
        with pytest.raises(PreconditionError):
            oracle.implied_literals()
        return
    expected = {
        literal
        for var in range(1, formula.n + 1)
        for literal in (Literal(var), Literal(var, False))
        if truth_table_entails(formula, Clause.of(0, (literal,)))
    }
    assert oracle.implied_literals() == expected
