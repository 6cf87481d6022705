"""Propositional data model: literals, clauses, formulas and the weighted binary base."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import UnknownClauseError


@dataclass(frozen=True, slots=True)
class Literal:
    var: int
    positive: bool = True

    def __post_init__(self) -> None:
        if self.var < 1:
            raise ValueError(f"variable index must be >= 1, got {self.var}")

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(value), value > 0)

    @classmethod
    def from_index(cls, index: int) -> "Literal":
        return cls(index // 2 + 1, index % 2 == 0)

    @property
    def index(self) -> int:
        """Dense node number; the complement is ``index ^ 1``."""
        return 2 * (self.var - 1) + (0 if self.positive else 1)

    @property
    def key(self) -> Tuple[int, int]:
        return (self.var, 0 if self.positive else 1)

    def to_int(self) -> int:
        return self.var if self.positive else -self.var

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __lt__(self, other: "Literal") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return str(self.to_int())


LiteralLike = Union[int, Literal]


def lit(value: LiteralLike) -> Literal:
    if isinstance(value, Literal):
        return value
    return Literal.from_int(int(value))


def canonical_literals(values: Iterable[LiteralLike]) -> Tuple[Literal, ...]:
    literals = sorted({lit(value) for value in values})
    if not literals:
        raise ValueError("empty clause")
    for first, second in zip(literals, literals[1:]):
        if first.var == second.var:
            raise ValueError(f"tautological clause on variable {first.var}")
    return tuple(literals)


@dataclass(frozen=True, slots=True)
class Clause:
    id: int
    lits: Tuple[Literal, ...]

    @classmethod
    def of(cls, clause_id: int, values: Iterable[LiteralLike]) -> "Clause":
        return cls(clause_id, canonical_literals(values))

    @property
    def width(self) -> int:
        return len(self.lits)

    @property
    def is_unit(self) -> bool:
        return len(self.lits) == 1

    @property
    def is_horn(self) -> bool:
        return sum(1 for literal in self.lits if literal.positive) <= 1

    @property
    def key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(literal.key for literal in self.lits)

    @property
    def variables(self) -> FrozenSet[int]:
        return frozenset(literal.var for literal in self.lits)

    def to_ints(self) -> Tuple[int, ...]:
        return tuple(literal.to_int() for literal in self.lits)

    def __contains__(self, item: object) -> bool:
        return item in self.lits

    def __str__(self) -> str:
        return "(" + " ".join(str(literal) for literal in self.lits) + ")"


class FormulaKind(str, Enum):
    TWO_CNF = "2cnf"
    HORN = "horn"
    BOTH = "both"

    @property
    def is_binary(self) -> bool:
        return self in (FormulaKind.TWO_CNF, FormulaKind.BOTH)

    @property
    def is_horn(self) -> bool:
        return self in (FormulaKind.HORN, FormulaKind.BOTH)


def infer_kind(clauses: Iterable[Clause]) -> FormulaKind:
    binary = True
    horn = True
    for clause in clauses:
        binary = binary and clause.width <= 2
        horn = horn and clause.is_horn
    if binary and horn:
        return FormulaKind.BOTH
    if binary:
        return FormulaKind.TWO_CNF
    if horn:
        return FormulaKind.HORN
    raise ValueError("general CNF: a clause wider than two literals is not Horn")


@dataclass(frozen=True)
class Canonical:
    """Result of canonicalizing raw clause rows."""

    clauses: Tuple[Tuple[Literal, ...], ...]
    row_ids: Tuple[int, ...]
    duplicates: Tuple[int, ...]


def canonicalize(rows: Sequence[Iterable[LiteralLike]]) -> Canonical:
    """Sort and deduplicate clause rows; ids are 1-based positions in canonical order."""
    literal_rows = [canonical_literals(row) for row in rows]
    ordered = sorted(set(literal_rows), key=lambda lits: tuple(literal.key for literal in lits))
    position = {lits: index + 1 for index, lits in enumerate(ordered)}
    seen: set = set()
    duplicates: List[int] = []
    for row_index, lits in enumerate(literal_rows):
        if lits in seen:
            duplicates.append(row_index)
        seen.add(lits)
    return Canonical(
        clauses=tuple(ordered),
        row_ids=tuple(position[lits] for lits in literal_rows),
        duplicates=tuple(duplicates),
    )


@dataclass(frozen=True, eq=False)
class Formula:
    """An ordered, duplicate-free clause set.

    Clause ids are stable within a formula and survive ``subset``; two formulas are
    equal when they hold the same clauses under their original variable numbering.
    """

    clauses: Tuple[Clause, ...]
    num_vars: int
    names: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.clauses, key=lambda clause: clause.id))
        object.__setattr__(self, "clauses", ordered)
        ids = [clause.id for clause in ordered]
        if len(set(ids)) != len(ids):
            raise ValueError("clause ids must be unique")
        keys = [clause.key for clause in ordered]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate clause")
        for clause in ordered:
            for literal in clause.lits:
                if literal.var > self.num_vars:
                    raise ValueError(f"variable {literal.var} exceeds num_vars={self.num_vars}")
        if not self.names:
            object.__setattr__(self, "names", tuple(range(1, self.num_vars + 1)))
        elif len(self.names) != self.num_vars:
            raise ValueError("names must map every variable")
        infer_kind(ordered)

    @classmethod
    def from_ints(
        cls,
        rows: Sequence[Iterable[LiteralLike]],
        *,
        num_vars: Optional[int] = None,
        names: Optional[Sequence[int]] = None,
    ) -> "Formula":
        canonical = canonicalize(rows)
        clauses = tuple(Clause(index + 1, lits) for index, lits in enumerate(canonical.clauses))
        used = max((literal.var for lits in canonical.clauses for literal in lits), default=0)
        return cls(clauses, num_vars=max(num_vars or 0, used), names=tuple(names or ()))

    @classmethod
    def empty(cls) -> "Formula":
        return cls((), num_vars=0)

    @property
    def n(self) -> int:
        return self.num_vars

    @property
    def m(self) -> int:
        return len(self.clauses)

    @cached_property
    def kind(self) -> FormulaKind:
        return infer_kind(self.clauses)

    @cached_property
    def by_id(self) -> Dict[int, Clause]:
        return {clause.id: clause for clause in self.clauses}

    @cached_property
    def ids(self) -> FrozenSet[int]:
        return frozenset(self.by_id)

    @cached_property
    def max_id(self) -> int:
        return max(self.by_id, default=0)

    def clause(self, clause_id: int) -> Clause:
        try:
            return self.by_id[clause_id]
        except KeyError:
            raise UnknownClauseError(f"clause {clause_id} is not in the formula", clause_id=clause_id) from None

    def find(self, values: Iterable[LiteralLike]) -> Clause:
        wanted = canonical_literals(values)
        for clause in self.clauses:
            if clause.lits == wanted:
                return clause
        raise UnknownClauseError(f"no clause {wanted} in the formula", clause_id=0)

    def subset(self, ids: Iterable[int]) -> "Formula":
        chosen = [self.clause(clause_id) for clause_id in set(ids)]
        return Formula(tuple(chosen), num_vars=self.num_vars, names=self.names)

    def without(self, *ids: int) -> "Formula":
        for clause_id in ids:
            self.clause(clause_id)
        return self.subset(self.ids.difference(ids))

    def variables(self) -> FrozenSet[int]:
        return frozenset(var for clause in self.clauses for var in clause.variables)

    def containing(self, literal: Literal) -> List[Clause]:
        return [clause for clause in self.clauses if literal in clause.lits]

    def name_of(self, literal: Literal) -> int:
        name = self.names[literal.var - 1]
        return name if literal.positive else -name

    def signature(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            sorted(tuple(self.name_of(literal) for literal in clause.lits) for clause in self.clauses)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash(self.signature())

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __str__(self) -> str:
        return "{" + ", ".join(str(clause) for clause in self.clauses) + "}"


HornFormula = Formula


@dataclass(frozen=True, eq=False)
class WeightedFormula:
    """Binary-only base of a 2CNF formula with half-unit clause weights.

    ``origin`` maps each clause introduced for a unit to that unit's id in ``source``.
    """

    source: Formula
    base: Formula
    weight: Mapping[int, int]
    origin: Mapping[int, int]

    @cached_property
    def _base_ids_by_source(self) -> Dict[int, Tuple[int, ...]]:
        grouped: Dict[int, List[int]] = {}
        for clause in self.base.clauses:
            grouped.setdefault(self.source_id(clause.id), []).append(clause.id)
        return {source_id: tuple(ids) for source_id, ids in grouped.items()}

    def source_id(self, base_id: int) -> int:
        return self.origin.get(base_id, base_id)

    def base_ids(self, source_id: int) -> Tuple[int, ...]:
        try:
            return self._base_ids_by_source[source_id]
        except KeyError:
            raise UnknownClauseError(
                f"clause {source_id} has no counterpart in the weighted base", clause_id=source_id
            ) from None

    def to_base_ids(self, source_ids: Iterable[int]) -> FrozenSet[int]:
        return frozenset(base_id for source_id in source_ids for base_id in self.base_ids(source_id))

    def to_source_ids(self, base_ids: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.source_id(base_id) for base_id in base_ids)
