"""FastAPI service exposing the experiment runner.

POST /run takes one experiment configuration and returns the report along
with the exit status the CLI would use; POST /batch takes a list of raw
configurations and mirrors the line-batch semantics (malformed entries
become error records instead of failing the request).  Run it with

    uvicorn zetaspan.service:app
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .experiments import ExperimentConfig, run_config, run_raw


class RunRequest(BaseModel):
    command: Literal[
        "expand-cot",
        "eval-zeta",
        "verify-lemma3",
        "verify-lemma4",
        "exact-ratio",
        "probe-dim",
        "probe-zeta",
        "find-relation",
        "subfield-test",
    ]
    k: Optional[int] = None
    q: Optional[int] = None
    a: Optional[int] = None
    d: Optional[int] = None
    digits: int = Field(default=100, ge=10)
    bound: Optional[int] = Field(default=None, ge=1)
    mode: Literal["full", "plus", "minus"] = "full"
    values: Optional[list[str]] = None
    element: Optional[str] = None

    def to_config(self) -> ExperimentConfig:
        return ExperimentConfig(
            command=self.command,
            k=self.k,
            q=self.q,
            a=self.a,
            d=self.d,
            digits=self.digits,
            bound=self.bound,
            mode=self.mode,
            values=tuple(self.values) if self.values is not None else None,
            element=self.element,
        )


class RunResponse(BaseModel):
    exit_code: int
    report: dict


class BatchRequest(BaseModel):
    configs: list[Any]


class BatchResponse(BaseModel):
    exit_code: int
    results: list[dict]


app = FastAPI(
    title="zetaspan",
    version=__version__,
    description=(
        "High-precision Hurwitz zeta evaluation, exact cyclotomic identity "
        "verification, and integer-relation probes."
    ),
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/run", response_model=RunResponse)
def run(request: RunRequest) -> RunResponse:
    try:
        exit_code, report = run_config(request.to_config())
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    return RunResponse(exit_code=exit_code, report=report)


@app.post("/batch", response_model=BatchResponse)
def batch(request: BatchRequest) -> BatchResponse:
    results = []
    all_ok = True
    for index, raw in enumerate(request.configs):
        outcome = run_raw(raw) if isinstance(raw, dict) else {
            "exit_code": 2,
            "error": f"config must be a JSON object, got {type(raw).__name__}",
        }
        record: dict = {"index": index, "exit_code": outcome["exit_code"]}
        if "report" in outcome:
            record["report"] = outcome["report"]
        else:
            record["error"] = outcome["error"]
        results.append(record)
        if outcome["exit_code"] != 0:
            all_ok = False
    return BatchResponse(exit_code=0 if all_ok else 1, results=results)
