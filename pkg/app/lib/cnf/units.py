from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional

from ..errors import PreconditionError, UnknownClauseError
from .models import Clause, Formula, Literal, WeightedFormula

logger = logging.getLogger("clausetrim.cnf")

NATIVE_WEIGHT = 2
HALF_WEIGHT = 1


def eliminate_units(formula: Formula, *, fresh_start: Optional[int] = None) -> WeightedFormula:
    """Replace every unit ``l`` by ``(l w), (l -w)`` with a fresh ``w``.

    Each half weighs one half-unit, a native binary clause two. Fresh variables are
    numbered above ``max(num_vars, fresh_start)``; replacement clauses get ids above the
    formula's largest id.
    """
    if not formula.kind.is_binary:
        raise PreconditionError("unit elimination needs a 2CNF formula", condition="2cnf")

    next_var = max(formula.num_vars, fresh_start or 0)
    next_id = formula.max_id
    next_name = max(formula.names, default=0)
    names: List[int] = list(formula.names)
    while len(names) < next_var:
        next_name += 1
        names.append(next_name)

    clauses: List[Clause] = []
    weight: Dict[int, int] = {}
    origin: Dict[int, int] = {}
    for clause in formula.clauses:
        if not clause.is_unit:
            clauses.append(clause)
            weight[clause.id] = NATIVE_WEIGHT
            continue
        (literal,) = clause.lits
        next_var += 1
        next_name += 1
        names.append(next_name)
        fresh = Literal(next_var)
        for offset, partner in enumerate((fresh, -fresh), start=1):
            half = Clause.of(next_id + offset, (literal, partner))
            clauses.append(half)
            weight[half.id] = HALF_WEIGHT
            origin[half.id] = clause.id
        next_id += 2

    base = Formula(tuple(clauses), num_vars=next_var, names=tuple(names))
    if origin:
        logger.debug(
            "cnf.units.eliminated",
            extra={"units": len(origin) // 2, "base_clauses": base.m},
        )
    return WeightedFormula(source=formula, base=base, weight=weight, origin=origin)


def subset_size_half_units(weighted: WeightedFormula, ids: Iterable[int]) -> int:
    total = 0
    for clause_id in set(ids):
        try:
            total += weighted.weight[clause_id]
        except KeyError:
            raise UnknownClauseError(
                f"clause {clause_id} is not in the weighted base", clause_id=clause_id
            ) from None
    return total


def format_half_units(half_units: int) -> str:
    return f"{half_units}/2"
