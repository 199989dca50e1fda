"""FastAPI service around the vector partition engine.

Formula computation is expensive and results are reusable, so computed
results are cached per (delta, strategy, algorithm) and evaluations are
served from the cache.  The CLI calls the same handlers in-process.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .engine import (
    ALGORITHMS,
    STRATEGIES,
    InternalInconsistencyError,
    UnsupportedRootSystemError,
    VpfResult,
    compute_elementary,
    compute_pf,
    evaluate_result,
    verify_against_oracle,
)
from .render import to_json_dict
from .schemas import (
    EvaluateRequest,
    EvaluateResponse,
    FormulaRequest,
    FormulaResponse,
    VerifyRequest,
    VerifyResponse,
)

_cache: dict = {}


def get_result(delta: tuple, strategy: str, algorithm: str, seed: int = 7) -> VpfResult:
    key = (delta, strategy, algorithm)
    got = _cache.get(key)
    if got is None:
        if algorithm == "pf":
            got = compute_pf(delta, strategy, seed=seed)
        elif algorithm == "elementary":
            got = compute_elementary(delta, strategy)
        else:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        _cache[key] = got
    return got


def handle_formula(req: FormulaRequest) -> dict:
    delta = req.resolved_delta()
    result = get_result(delta, req.strategy, req.algorithm, req.seed)
    return to_json_dict(result)


def handle_evaluate(req: EvaluateRequest) -> dict:
    delta = req.resolved_delta()
    result = get_result(delta, req.strategy, req.algorithm, req.seed)
    if len(req.point) != result.dimension:
        raise ValueError(f"point must have {result.dimension} coordinates")
    value = evaluate_result(result, tuple(req.point))
    return {"point": list(req.point), "value": value}


def handle_verify(req: VerifyRequest) -> dict:
    delta = req.resolved_delta()
    result = get_result(delta, req.strategy, req.algorithm)
    checked, mismatch = verify_against_oracle(result, req.box)
    doc = {"checked": checked, "matches": mismatch is None, "first_mismatch": None}
    if mismatch is not None:
        point, got, want = mismatch
        doc["first_mismatch"] = {"point": list(point), "formula": got, "oracle": want}
    return doc


app = FastAPI(title="vecpart", description="Vector partition function formulas")


@app.get("/api/health")
def health():
    return {"status": "ok"}


@app.get("/api/root-systems")
def list_root_systems():
    return {"supported": ["A1".replace("1", str(r)) for r in range(1, 7)] +
            [f"B{r}" for r in range(2, 6)] + [f"C{r}" for r in range(2, 6)] +
            [f"D{r}" for r in range(3, 6)] + ["G2", "F4"],
            "strategies": list(STRATEGIES), "algorithms": list(ALGORITHMS)}


def _wrap(handler, req):
    try:
        return handler(req)
    except (ValueError, UnsupportedRootSystemError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except InternalInconsistencyError as exc:
        raise HTTPException(status_code=500, detail=f"internal inconsistency: {exc}")


@app.post("/api/formula", response_model=FormulaResponse)
def formula(req: FormulaRequest):
    return _wrap(handle_formula, req)


@app.post("/api/evaluate", response_model=EvaluateResponse)
def evaluate(req: EvaluateRequest):
    return _wrap(handle_evaluate, req)


@app.post("/api/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest):
    return _wrap(handle_verify, req)
