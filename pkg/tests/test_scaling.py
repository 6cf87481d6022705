from __future__ import annotations

import pytest

from app.jobs.scaling_benchmark import chain_formula, run_benchmark


def test_chain_formula_points_forward() -> None:
    formula = chain_formula(100, 120, block=10, seed=1)
    assert formula.m == 120
    for clause in formula.clauses:
        negative, positive = clause.to_ints()
        assert negative < 0 < positive
        assert -negative < positive


def test_chain_formula_rejects_overfull_blocks() -> None:
    with pytest.raises(ValueError):
        chain_formula(10, 100, block=5, seed=0)


@pytest.mark.slow
def test_redundancy_check_scales_roughly_linearly() -> None:
    results = run_benchmark(num_vars=4000, clause_counts=[4000, 8000], runs=5, block=20, seed=0)
    (_, small), (_, large) = results
    # median of five runs; doubling the clauses may at most triple the time
    assert large <= 3.0 * max(small, 1e-3)
