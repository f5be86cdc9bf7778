"""FastAPI service exposing evaluation, equality and the verification suites.

The core engine is pure and stateless, so every endpoint is a plain
request/response function; run ``cuntzalg serve`` (or uvicorn directly) for a
long-lived instance, or drive the app in-process through the CLI.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .backends import EXACT, NumericScalars
from .expr import ParseError, format_element, parse_element
from .schemas import (CheckModel, EqRequest, EqResponse, EvalRequest,
                      EvalResponse, HealthResponse, ReportResponse,
                      VerifyRequest)
from .serialize import element_to_obj
from .suites import SuiteOptions, run_suite, suite_rank_bounds

app = FastAPI(
    title="cuntzalg",
    version=__version__,
    description="Exact symbolic computation in Cuntz algebras: expression "
                "evaluation, equality decisions and identity verification suites.",
)


def _backend(name: str, precision: int, tolerance: float):
    if name == "exact":
        return EXACT
    return NumericScalars(precision, tolerance)


def _parse(expr: str, n: int, backend, what: str):
    try:
        return parse_element(expr, n, backend)
    except ParseError as err:
        raise HTTPException(status_code=400, detail={
            "message": f"{what}: {err.message}",
            "line": err.line,
            "column": err.column,
            "expected": err.expected,
        })


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/eval", response_model=EvalResponse, response_model_exclude_none=True)
def eval_expression(req: EvalRequest) -> EvalResponse:
    backend = _backend(req.backend, req.precision, req.tolerance)
    value = _parse(req.expr, req.n, backend, "expr")
    element = element_to_obj(value) if req.backend == "exact" else None
    return EvalResponse(n=req.n, backend=req.backend,
                        display=format_element(value), element=element,
                        term_count=len(value))


@app.post("/eq", response_model=EqResponse)
def eq_expressions(req: EqRequest) -> EqResponse:
    backend = _backend(req.backend, req.precision, req.tolerance)
    lhs = _parse(req.lhs, req.n, backend, "lhs")
    rhs = _parse(req.rhs, req.n, backend, "rhs")
    return EqResponse(equal=lhs.equals(rhs, max_terms=req.max_terms),
                      backend=req.backend, n=req.n)


@app.post("/verify", response_model=ReportResponse, response_model_exclude_none=True)
def verify(req: VerifyRequest) -> ReportResponse:
    if req.n not in suite_rank_bounds(req.suite):
        raise HTTPException(status_code=400, detail={
            "message": f"suite {req.suite!r} runs at ranks "
                       f"{list(suite_rank_bounds(req.suite))}, got {req.n}",
        })
    opts = SuiteOptions(backend=req.backend, seed=req.seed, samples=req.samples,
                        precision=req.precision, tolerance=req.tolerance,
                        max_terms=req.max_terms, normalization=req.normalization)
    report = run_suite(req.suite, req.n, opts)
    return ReportResponse(
        suite=report.suite, n=report.n, backend=report.backend,
        checks=[CheckModel(**c.to_json_obj()) for c in report.checks],
        elapsed_ms=report.elapsed_ms, passed=report.passed)
