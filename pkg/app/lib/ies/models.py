from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..cnf.units import format_half_units


class Membership(str, Enum):
    IN_ALL = "in_all"
    IN_SOME = "in_some"
    IN_NONE = "in_none"
    NEEDS_SEARCH = "needs_search"


@dataclass(frozen=True)
class IesOption:
    """One way to keep an implied literal entailed: a single clause or a pair (source ids)."""

    clause_ids: FrozenSet[int]
    cost: int
    kind: str

    def sort_key(self) -> Tuple[int, int, List[int]]:
        return (self.cost, 0 if self.kind == "single" else 1, sorted(self.clause_ids))


@dataclass
class IesReport:
    regime: str
    cyclic: str
    ies: Optional[FrozenSet[int]] = None
    min_size_half_units: Optional[int] = None
    unique: Optional[bool] = None
    membership: Dict[int, Membership] = field(default_factory=dict)
    exact_used: bool = False
    alternatives: Dict[int, List[List[int]]] = field(default_factory=dict)

    @property
    def needs_search(self) -> bool:
        return self.min_size_half_units is None or any(
            status is Membership.NEEDS_SEARCH for status in self.membership.values()
        )

    def undecided(self) -> List[int]:
        return sorted(cid for cid, status in self.membership.items() if status is Membership.NEEDS_SEARCH)

    def to_dict(self) -> Dict[str, object]:
        return {
            "regime": self.regime,
            "cyclic": self.cyclic,
            "unique": self.unique,
            "min_size": None if self.min_size_half_units is None else format_half_units(self.min_size_half_units),
            "ies": None if self.ies is None else sorted(self.ies),
            "membership": {str(cid): self.membership[cid].value for cid in sorted(self.membership)},
            "exact_used": self.exact_used,
        }
