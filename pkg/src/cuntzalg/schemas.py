"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from .suites import DEFAULT_SEED

Backend = Literal["exact", "numeric"]
SuiteName = Literal["spectral", "cyclic-fixed", "exchange", "nogo", "algebra-laws"]


class HealthResponse(BaseModel):
    status: str
    version: str


class EvalRequest(BaseModel):
    expr: str
    n: int = Field(ge=2, le=12)
    backend: Backend = "exact"
    precision: int = Field(default=128, ge=53)
    tolerance: float = Field(default=1e-10, gt=0)


class EvalResponse(BaseModel):
    n: int
    backend: Backend
    display: str
    element: Optional[dict] = None     # exact backend only
    term_count: int


class EqRequest(BaseModel):
    lhs: str
    rhs: str
    n: int = Field(ge=2, le=12)
    backend: Backend = "exact"
    precision: int = Field(default=128, ge=53)
    tolerance: float = Field(default=1e-10, gt=0)
    max_terms: Optional[int] = Field(default=None, ge=1)


class EqResponse(BaseModel):
    equal: bool
    backend: Backend
    n: int


class VerifyRequest(BaseModel):
    suite: SuiteName
    n: int = Field(ge=2, le=6)
    backend: Backend = "exact"
    seed: int = DEFAULT_SEED
    samples: int = Field(default=50, ge=1)
    precision: int = Field(default=128, ge=53)
    tolerance: float = Field(default=1e-10, gt=0)
    max_terms: Optional[int] = Field(default=None, ge=1)
    normalization: Literal["scaled", "unscaled", "both"] = "both"


class CheckModel(BaseModel):
    id: str
    status: Literal["pass", "fail", "skipped"]
    detail: str = ""
    witness: Optional[dict] = None


class ReportResponse(BaseModel):
    suite: SuiteName
    n: int
    backend: Backend
    checks: list[CheckModel]
    elapsed_ms: int
    passed: bool


class ParseErrorDetail(BaseModel):
    message: str
    line: int
    column: int
    expected: list[str] = []
