from __future__ import annotations

from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class ClassificationOut(BaseModel):
    model_config = ConfigDict(extra="forbid")

    regime: str
    cyclic: str
    implied: List[int] = Field(default_factory=list)
    cycle: List[int] = Field(default_factory=list)
    clash_var: Optional[int] = None
    variables: int = Field(..., ge=0)
    clauses: int = Field(..., ge=0)


class RedundancyReportOut(BaseModel):
    model_config = ConfigDict(extra="forbid")

    redundant: bool
    witness: Optional[int] = None
    regime: str
    per_clause: Dict[str, str]
    sources: Dict[str, str]


class IesReportOut(BaseModel):
    model_config = ConfigDict(extra="forbid")

    regime: str
    cyclic: str
    unique: Optional[bool] = None
    min_size: Optional[str] = Field(default=None, pattern=r"^\d+/2$")
    ies: Optional[List[int]] = None
    membership: Dict[str, str]
    exact_used: bool = False


class MembershipOut(BaseModel):
    clause: int = Field(..., ge=1)
    question: str
    answer: Optional[bool] = None
    membership: str


class SidecarOut(BaseModel):
    reduction: str
    focus: Optional[int] = None
    k: Optional[int] = None
    truth: Union[bool, int]
    gadget: Dict[str, int] = Field(default_factory=dict)
    source: Dict[str, object] = Field(default_factory=dict)


class ClauseMapOut(BaseModel):
    lines: Dict[str, int]


class OracleOut(BaseModel):
    question: str
    answer: Optional[bool] = None
    min_size: Optional[str] = None
    ies: Optional[List[List[int]]] = None
