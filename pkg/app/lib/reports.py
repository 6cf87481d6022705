from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional


class Regime(str, Enum):
    INCONSISTENT = "inconsistent"
    CONSISTENT_IMPLYING = "consistent_implying"
    CONSISTENT_NO_IMPLIED = "consistent_no_implied"

    @property
    def label(self) -> str:
        return self.value.replace("_", " ")


class Verdict(str, Enum):
    REDUNDANT = "redundant"
    IRREDUNDANT = "irredundant"


@dataclass(frozen=True)
class RedundancyReport:
    """Per-clause redundancy verdicts keyed by clause id of the analysed formula.

    ``sources`` records which procedure produced each verdict, e.g. ``"marked_bfs"``.
    ``regime`` is a ``Regime`` value, or ``"horn"`` for the Horn pipeline.
    """

    per_clause: Dict[int, Verdict]
    regime: str
    sources: Dict[int, str] = field(default_factory=dict)

    @property
    def redundant(self) -> bool:
        return any(verdict is Verdict.REDUNDANT for verdict in self.per_clause.values())

    @property
    def witness(self) -> Optional[int]:
        for clause_id in sorted(self.per_clause):
            if self.per_clause[clause_id] is Verdict.REDUNDANT:
                return clause_id
        return None

    def redundant_ids(self) -> frozenset:
        return frozenset(cid for cid, verdict in self.per_clause.items() if verdict is Verdict.REDUNDANT)

    def irredundant_ids(self) -> frozenset:
        return frozenset(cid for cid, verdict in self.per_clause.items() if verdict is Verdict.IRREDUNDANT)

    def to_dict(self) -> Dict[str, object]:
        return {
            "redundant": self.redundant,
            "witness": self.witness,
            "regime": self.regime,
            "per_clause": {str(cid): self.per_clause[cid].value for cid in sorted(self.per_clause)},
            "sources": {str(cid): self.sources[cid] for cid in sorted(self.sources)},
        }
