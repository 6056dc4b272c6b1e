"""HTTP facade over the validator, code generators, registry, and model store.

Compute endpoints (/api/validate, /api/generate) are pure request/response;
only explicit model_id usage touches the store. Request bodies are read
manually so that an unreadable body yields a 400 with a diagnostics-shaped
payload instead of a framework error.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .capability import TARGET_NAMES, Target, target_from_name
from .codegen import EmitOptions, GenerationRefused, generate
from .document import ModelDocument
from .parsing import ParseError, parse_nlds, serialize_nlds
from .registry import all_schemas
from .store import ModelStore, RevisionConflictError, UnknownModelError
from .validation import validate

log = logging.getLogger("nlds.service")

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8080
DEFAULT_STORE_DIR = "./models"


def _error_body(message: str, code: str = "NLDS001") -> dict:
    """A level-1-style payload for transport-level problems."""
    return {
        "passed": False,
        "levels_run": [1],
        "diagnostics": [
            {
                "level": 1,
                "severity": "error",
                "code": code,
                "message": message,
                "layer_ids": [],
                "link": None,
                "path": "$",
                "suggestion": None,
            }
        ],
    }


async def _read_json(request: Request) -> tuple[dict | None, JSONResponse | None]:
    body = await request.body()
    if not body:
        return None, JSONResponse(_error_body("request body is empty"), status_code=400)
    try:
        payload = json.loads(body)
    except json.JSONDecodeError as exc:
        return None, JSONResponse(_error_body(f"request body is not valid JSON: {exc.msg}"), status_code=400)
    if not isinstance(payload, dict):
        return None, JSONResponse(_error_body("request body must be a JSON object"), status_code=400)
    return payload, None


def _document_text(value) -> str:
    """Accept the document either embedded as an object or as raw text."""
    if isinstance(value, str):
        return value
    return json.dumps(value)


def _target_or_response(payload: dict, required: bool) -> tuple[Target | None, JSONResponse | None]:
    raw = payload.get("target")
    if raw is None:
        if required:
            return None, JSONResponse(_error_body("target is required", code="NLDS010"), status_code=400)
        return None, None
    target = target_from_name(raw) if isinstance(raw, str) else None
    if target is None:
        return None, JSONResponse(
            _error_body(f"unknown target {raw!r}; expected one of {', '.join(TARGET_NAMES)}", code="NLDS010"),
            status_code=400,
        )
    return target, None


def palette_payload() -> dict:
    groups: dict[str, list[dict]] = {}
    for schema in all_schemas():
        groups.setdefault(schema.palette_group, []).append(
            {
                "kind": schema.kind.value,
                "doc": schema.doc,
                "input_ranks": sorted(schema.input_ranks),
                "output_ranks": sorted(schema.output_ranks),
                "arity": {"min_inputs": schema.min_inputs, "max_inputs": schema.max_inputs},
                "params": [
                    {
                        "name": spec.name,
                        "value_type": spec.value_type,
                        "required": spec.required,
                        "default": list(spec.default) if isinstance(spec.default, tuple) else spec.default,
                        "range": spec.describe_range(),
                        "choices": list(spec.choices),
                        "doc": spec.doc,
                    }
                    for spec in schema.param_specs
                ],
            }
        )
    return {"groups": [{"name": name, "kinds": kinds} for name, kinds in groups.items()]}


def _stored_payload(stored) -> dict:
    return {
        "id": stored.id,
        "revision": stored.revision,
        "updated_at": stored.updated_at,
        "document": json.loads(serialize_nlds(stored.document)),
    }


def create_app(store_dir: Path | str = DEFAULT_STORE_DIR, static_dir: Path | str | None = None) -> FastAPI:
    app = FastAPI(title="NLDS designer service", version="1.0.0")
    store = ModelStore(store_dir)

    @app.post("/api/validate")
    async def validate_endpoint(request: Request):
        payload, error = await _read_json(request)
        if error is not None:
            return error
        if "document" not in payload:
            return JSONResponse(_error_body("missing 'document'", code="NLDS002"), status_code=400)
        target, error = _target_or_response(payload, required=False)
        if error is not None:
            return error
        report = validate(_document_text(payload["document"]), target)
        return JSONResponse(report.to_json())

    @app.post("/api/generate")
    async def generate_endpoint(request: Request):
        payload, error = await _read_json(request)
        if error is not None:
            return error
        target, error = _target_or_response(payload, required=True)
        if error is not None:
            return error

        doc: ModelDocument
        if "model_id" in payload:
            try:
                doc = store.get(str(payload["model_id"])).document
            except UnknownModelError:
                return JSONResponse({"error": "unknown model id"}, status_code=404)
        elif "document" in payload:
            try:
                doc = parse_nlds(_document_text(payload["document"]))
            except ParseError as exc:
                report = {
                    "passed": False,
                    "levels_run": [1],
                    "diagnostics": [d.to_json() for d in exc.diagnostics],
                }
                return JSONResponse(report, status_code=422)
        else:
            return JSONResponse(_error_body("missing 'document' or 'model_id'", code="NLDS002"), status_code=400)

        options = payload.get("options") or {}
        emit_options = EmitOptions(
            include_training=bool(options.get("include_training", True)),
            dataset_placeholder=str(options.get("dataset_placeholder", "dataset")),
        )
        try:
            artifact = generate(doc, target, emit_options)
        except GenerationRefused as refused:
            return JSONResponse(refused.report.to_json(), status_code=422)
        return JSONResponse(artifact.to_json())

    @app.get("/api/layers")
    async def layers_endpoint():
        return JSONResponse(palette_payload())

    @app.get("/api/models")
    async def list_models():
        return JSONResponse({"models": store.list()})

    @app.post("/api/models")
    async def create_model(request: Request):
        payload, error = await _read_json(request)
        if error is not None:
            return error
        if "document" not in payload:
            return JSONResponse(_error_body("missing 'document'", code="NLDS002"), status_code=400)
        try:
            doc = parse_nlds(_document_text(payload["document"]))
        except ParseError as exc:
            return JSONResponse(
                {"error": "document is not structure-valid", "diagnostics": [d.to_json() for d in exc.diagnostics]},
                status_code=422,
            )
        stored = store.create(doc)
        return JSONResponse(_stored_payload(stored), status_code=201)

    @app.get("/api/models/{model_id}")
    async def read_model(model_id: str):
        try:
            return JSONResponse(_stored_payload(store.get(model_id)))
        except UnknownModelError:
            return JSONResponse({"error": "unknown model id"}, status_code=404)

    @app.put("/api/models/{model_id}")
    async def update_model(model_id: str, request: Request):
        payload, error = await _read_json(request)
        if error is not None:
            return error
        if "document" not in payload or "revision" not in payload:
            return JSONResponse(_error_body("missing 'document' or 'revision'", code="NLDS002"), status_code=400)
        try:
            doc = parse_nlds(_document_text(payload["document"]))
        except ParseError as exc:
            return JSONResponse(
                {"error": "document is not structure-valid", "diagnostics": [d.to_json() for d in exc.diagnostics]},
                status_code=422,
            )
        try:
            stored = store.update(model_id, doc, int(payload["revision"]))
        except UnknownModelError:
            return JSONResponse({"error": "unknown model id"}, status_code=404)
        except RevisionConflictError as conflict:
            return JSONResponse(
                {"error": "revision conflict", "revision": conflict.actual}, status_code=409
            )
        return JSONResponse(_stored_payload(stored))

    @app.delete("/api/models/{model_id}")
    async def delete_model(model_id: str):
        try:
            store.delete(model_id)
        except UnknownModelError:
            return JSONResponse({"error": "unknown model id"}, status_code=404)
        return JSONResponse({"deleted": model_id})

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="designer")

    return app


def default_static_dir() -> Path | None:
    """The bundled designer UI build, when present next to the package."""
    candidate = Path(__file__).resolve().parent.parent.parent / "frontend" / "public"
    return candidate if candidate.is_dir() else None
