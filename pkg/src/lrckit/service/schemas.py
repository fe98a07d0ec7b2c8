"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class GenerateRequest(BaseModel):
    q: int
    r: int
    mu: int = 2
    w: int = 0
    l: int
    t: int | None = None
    strategy: str = "FULL"
    seed: int | None = None


class PresetRequest(BaseModel):
    q: int
    row: int = Field(ge=1, le=8)


class GenerateResponse(BaseModel):
    spec_text: str
    q: int
    n: int
    k: int
    r: int
    mu: int
    w: int
    l: int
    t: int
    strategy: str


class VerifyRequest(BaseModel):
    spec_text: str
    exact_cap: int = 1 << 24
    trials: int = 200
    seed: int = 0
    workers: int = 1


class ClaimModel(BaseModel):
    claim: str
    expected: int
    measured: str
    status: str


class GroupAuditModel(BaseModel):
    group: int
    dimension: int
    subsets_checked: int
    failed_subsets: list[list[int]]


class LocalityModel(BaseModel):
    passed: bool
    reads_per_repair: int
    groups: list[GroupAuditModel]


class VerifyResponse(BaseModel):
    q: int
    n: int
    k: int
    k_declared: int
    k_strategy: int
    k_codim_target: int
    r: int
    mu: int
    w: int
    l: int
    t: int
    strategy: str
    seed: int | None
    distance_exact: int | None
    distance_lower: int
    distance_upper: int
    distance_method: str
    max_common_roots: int | None
    common_roots_method: str | None
    singleton_bound: int
    defect: int | None
    optimal: bool
    claims: list[ClaimModel]
    locality: LocalityModel
    stats: dict
    all_verified_hold: bool


class EncodeRequest(BaseModel):
    spec_text: str
    message: list[int]


class EncodeResponse(BaseModel):
    codeword: list[int]


class RepairRequest(BaseModel):
    spec_text: str
    codeword: list[int | None]


class RepairResponse(BaseModel):
    codeword: list[int]
    repaired_positions: list[int]
    reads_per_repair: int


class SimulateRequest(BaseModel):
    spec_text: str
    failures: int = Field(ge=1)
    trials: int = Field(ge=1)
    seed: int = 0


class SimulateResponse(BaseModel):
    trials: int
    failures: int
    fully_repaired_fraction: float
    mean_reads_per_repaired_symbol: float
    group_erasure_histogram: dict[int, int]


class PresetRow(BaseModel):
    row: int
    q: int
    r: int
    mu: int
    w: int
    l: int
    t: int
    n: int
    k: int
    strategy: str
