"""HTTP service over the garment registry.

Stateless JSON endpoints back the browser configurator: list garments,
describe a garment's parameter schema with ranges resolved against a
body, and evaluate a garment to pattern JSON plus an SVG render.  Domain
errors map onto status codes (404 unknown garment, 422 bad parameters,
500 solver failures) with the structured ``{code, path?, message,
residuals?}`` report as the response body.
"""

from __future__ import annotations

import json
from importlib import resources

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import garments
from .cli import evaluate_pattern
from .errors import (
    ParamError,
    PatternFormatError,
    SewkitError,
    UnknownGarmentError,
)
from .params import (
    BodyLoader,
    BodyParams,
    body_from_dict,
    merge_design,
    resolve_design,
)
from .svg import render

app = FastAPI(title="sewkit", version="0.1.0")

# the service is stateless and auth-free; let the configurator call it
# from whatever origin its static files are served from
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)

_STATUS = {
    ParamError: 422,
    PatternFormatError: 422,
    UnknownGarmentError: 404,
}


@app.exception_handler(SewkitError)
async def _domain_error(request: Request, exc: SewkitError) -> JSONResponse:
    status = next(
        (code for cls, code in _STATUS.items() if isinstance(exc, cls)), 500
    )
    return JSONResponse(status_code=status, content=exc.report())


def _default_body() -> BodyParams:
    ref = resources.files("sewkit").joinpath("assets/bodies/average.json")
    return body_from_dict(json.loads(ref.read_text(encoding="utf-8")))


def _body_of(payload: dict) -> BodyParams:
    doc = payload.get("body")
    if doc is None:
        return _default_body()
    if isinstance(doc, dict) and "body" not in doc:
        doc = {"body": doc}
    return body_from_dict(doc)


def _design_of(payload: dict) -> dict | None:
    doc = payload.get("design")
    if doc is None:
        return None
    if isinstance(doc, dict) and "design" not in doc:
        doc = {"design": doc}
    return doc


def _schema(name: str, body: BodyParams, design_doc: dict | None) -> dict:
    spec = garments.get(name)
    resolved = resolve_design(merge_design(spec.design_template(), design_doc), body)
    params = {}
    for pname in resolved.order:
        p = resolved.params[pname]
        entry: dict = {"type": p.kind, "value": p.value}
        if p.kind in ("numerical", "integer"):
            entry["low"], entry["high"] = p.low, p.high
            entry["range"] = list(p.range)
        elif p.kind == "categorical":
            entry["options"] = list(p.range)
        if p.depends_on:
            entry["depends_on"] = list(p.depends_on)
        params[pname] = entry
    return {
        "garment": name,
        "tags": sorted(spec.tags),
        "body_fields": list(BodyLoader.REQUIRED),
        "order": list(resolved.order),
        "params": params,
        "warnings": list(resolved.warnings),
    }


@app.get("/garments")
def list_garments() -> dict:
    out = []
    for name in sorted(garments.names()):
        out.append({"name": name, "tags": sorted(garments.get(name).tags)})
    return {"garments": out}


@app.get("/garments/{name}/schema")
def get_schema(name: str) -> dict:
    return _schema(name, _default_body(), None)


@app.post("/garments/{name}/schema")
async def post_schema(name: str, request: Request) -> dict:
    """Re-resolve the schema against an uploaded body and current values.

    Dependent ranges move when upstream parameters or measurements
    change; the configurator calls this to keep its slider bounds live.
    """
    payload = await request.json()
    return _schema(name, _body_of(payload), _design_of(payload))


@app.post("/garments/{name}/evaluate")
async def evaluate(name: str, request: Request) -> dict:
    payload = await request.json()
    body = _body_of(payload)
    pattern, warnings = evaluate_pattern(name, body, _design_of(payload))
    return {"pattern": pattern.to_doc(), "svg": render(pattern), "warnings": warnings}
