from models.models import (
    ClaimResult,
    CohomologyDims,
    FiberReport,
    HullStepReport,
    StabilizationReport,
    TangentDims,
)
from pydantic import BaseModel, validator
from typing import List, Optional


class RunConfig(BaseModel):
    subcommand: str
    spec: Optional[str] = None
    v: Optional[int] = None
    variant: Optional[str] = None
    k: Optional[int] = None
    format: str = "human"
    search_bound: int
    shards: int = 1

    @classmethod
    def subcommands(cls) -> List[str]:
        return ["ring", "cohom", "ledger", "deform", "lift", "verify-all"]

    @validator("subcommand")
    def known_subcommand(cls, value):
        if value not in cls.subcommands():
            raise ValueError(
                f"Unsupported subcommand {value}. Try one of the following: {', '.join(cls.subcommands())}"
            )
        return value

    @validator("search_bound", "shards")
    def positive(cls, value):
        if value < 1:
            raise ValueError("bounds and shard counts must be positive")
        return value


class FiltrationRow(BaseModel):
    k: int
    m_power: List[str]
    n_k: Optional[List[str]] = None
    graded: Optional[List[str]] = None
    graded_dim: Optional[int] = None


class RingResponse(BaseModel):
    presentation: str
    order: int
    length: int
    in_category_C: bool
    rows: List[FiltrationRow]


class CohomResponse(BaseModel):
    p: int
    v: int
    f: int
    rows: List[CohomologyDims]
    oracle_h1: List[Optional[int]] = []


class PlaceContribution(BaseModel):
    label: str
    dim_L: int
    h0: int
    contribution: int


class LedgerResponse(BaseModel):
    name: str
    kind: str
    claim: str
    value: List[int]
    expected: List[int]
    passed: bool
    contributions: List[PlaceContribution] = []
    tangent: Optional[TangentDims] = None


class DeformResponse(BaseModel):
    report: StabilizationReport
    probe: Optional[StabilizationReport] = None
    fiber: Optional[FiberReport] = None


class LiftResponse(BaseModel):
    report: HullStepReport
    passed: bool


class VerifyResponse(BaseModel):
    claims: List[ClaimResult]
    passed: bool
    notes: List[str] = []
