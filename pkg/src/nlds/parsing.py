"""Parsing and canonical serialization of NLDS documents.

``parse_nlds`` performs the level-1 structure checks and reports every
violation it can reach, not just the first. ``serialize_nlds`` emits the
unique canonical text used for golden files, storage, and diffing:
top-level keys in fixed order, all nested map keys sorted, two-space
indentation, one trailing newline.
"""
from __future__ import annotations

import json

from .diagnostics import Diagnostic, finding
from .document import (
    LOSS_KINDS,
    METRIC_KINDS,
    NLDS_VERSION,
    OPTIMIZER_KINDS,
    Hyperparameters,
    Layer,
    LayerKind,
    Link,
    ModelDocument,
    Optimizer,
    ParamValue,
)
from .registry import registry_lookup

TOP_LEVEL_KEYS = ("nlds_version", "name", "layers", "links", "hyperparameters")
HYPERPARAMETER_KEYS = ("optimizer", "loss", "batch_size", "epochs", "metrics")

_KIND_BY_NAME = {kind.value: kind for kind in LayerKind}


class ParseError(Exception):
    """Raised when a document fails level-1 structure validation."""

    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__(f"{len(diagnostics)} structure problem(s)")
        self.diagnostics = tuple(diagnostics)


def parse_nlds(text: str | bytes) -> ModelDocument:
    """Parse NLDS text into a document, raising ParseError on any violation."""
    findings: list[Diagnostic] = []

    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError([finding("NLDS001", f"document is not valid UTF-8: {exc.reason}", path="$")])

    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError([finding("NLDS001", f"document is not valid JSON: {exc.msg} at line {exc.lineno}", path="$")])

    if not isinstance(raw, dict):
        raise ParseError([finding("NLDS001", "top level must be a JSON object", path="$")])

    for key in TOP_LEVEL_KEYS:
        if key not in raw:
            findings.append(finding("NLDS002", f"missing top-level key {key!r}", path=key))
    for key in raw:
        if key not in TOP_LEVEL_KEYS:
            findings.append(finding("NLDS010", f"unexpected top-level key {key!r}", path=key))
    if findings and any(key not in raw for key in TOP_LEVEL_KEYS):
        raise ParseError(findings)

    version = raw["nlds_version"]
    if version != NLDS_VERSION:
        findings.append(
            finding("NLDS010", f"nlds_version must be {NLDS_VERSION!r}, got {version!r}", path="nlds_version")
        )

    name = raw["name"]
    if not isinstance(name, str) or not name:
        findings.append(finding("NLDS010", "name must be a non-empty string", path="name"))
        name = ""

    layers, declared_ids = _parse_layers(raw["layers"], findings)
    links = _parse_links(raw["links"], declared_ids, findings)
    hyperparameters = _parse_hyperparameters(raw["hyperparameters"], findings)

    if findings:
        raise ParseError(findings)
    assert hyperparameters is not None
    return ModelDocument(name=name, layers=layers, links=links, hyperparameters=hyperparameters)


def _parse_layers(raw, findings: list[Diagnostic]) -> tuple[tuple[Layer, ...], set[str]]:
    """Parse layers; also return every declared id so link resolution does
    not cascade when a layer fails for an unrelated reason (bad kind, dup)."""
    if not isinstance(raw, list):
        findings.append(finding("NLDS010", "layers must be a list", path="layers"))
        return (), set()
    if not raw:
        findings.append(finding("NLDS007", "layers list is empty", path="layers"))
        return (), set()

    layers: list[Layer] = []
    seen_ids: set[str] = set()
    for i, entry in enumerate(raw):
        path = f"layers[{i}]"
        if not isinstance(entry, dict):
            findings.append(finding("NLDS010", "layer entry must be an object", path=path))
            continue
        for key in entry:
            if key not in ("id", "kind", "params"):
                findings.append(finding("NLDS010", f"unexpected layer key {key!r}", path=f"{path}.{key}"))

        layer_id = entry.get("id")
        if "id" not in entry:
            findings.append(finding("NLDS002", "layer is missing its id", path=f"{path}.id"))
            continue
        if not isinstance(layer_id, str) or not layer_id:
            findings.append(finding("NLDS010", "layer id must be a non-empty string", path=f"{path}.id"))
            continue
        if layer_id in seen_ids:
            findings.append(finding("NLDS003", f"layer id {layer_id!r} is used more than once", layer_ids=(layer_id,)))
            continue
        seen_ids.add(layer_id)

        if "kind" not in entry:
            findings.append(finding("NLDS002", "layer is missing its kind", path=f"{path}.kind", layer_ids=(layer_id,)))
            continue
        kind_name = entry["kind"]
        kind = _KIND_BY_NAME.get(kind_name) if isinstance(kind_name, str) else None
        if kind is None:
            findings.append(
                finding("NLDS005", f"unknown layer kind {kind_name!r}", path=f"{path}.kind", layer_ids=(layer_id,))
            )
            continue

        params = _parse_params(entry.get("params", {}), kind, layer_id, path, findings)
        layers.append(Layer(id=layer_id, kind=kind, params=params))
    return tuple(layers), seen_ids


def _parse_params(raw, kind: LayerKind, layer_id: str, path: str, findings: list[Diagnostic]) -> dict[str, ParamValue]:
    if not isinstance(raw, dict):
        findings.append(finding("NLDS010", "params must be an object", path=f"{path}.params", layer_ids=(layer_id,)))
        return {}
    schema = registry_lookup(kind)
    params: dict[str, ParamValue] = {}
    for key, value in raw.items():
        if schema.param_spec(key) is None:
            findings.append(
                finding(
                    "NLDS006",
                    f"{kind} has no parameter {key!r}",
                    path=f"{path}.params.{key}",
                    layer_ids=(layer_id,),
                )
            )
            continue
        converted = _convert_value(value)
        if converted is None:
            findings.append(
                finding(
                    "NLDS010",
                    "parameter values must be scalars or lists of integers",
                    path=f"{path}.params.{key}",
                    layer_ids=(layer_id,),
                )
            )
            continue
        params[key] = converted
    return params


def _convert_value(value) -> ParamValue | None:
    """Map a JSON value onto the ParamValue union; None if unrepresentable."""
    if isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        return tuple(value)
    return None


def _parse_links(raw, ids: set[str], findings: list[Diagnostic]) -> tuple[Link, ...]:
    if not isinstance(raw, list):
        findings.append(finding("NLDS010", "links must be a list", path="links"))
        return ()
    links: list[Link] = []
    seen: set[tuple[str, str]] = set()
    for i, entry in enumerate(raw):
        path = f"links[{i}]"
        if not isinstance(entry, dict):
            findings.append(finding("NLDS010", "link entry must be an object", path=path))
            continue
        missing = [key for key in ("from", "to") if key not in entry]
        if missing:
            for key in missing:
                findings.append(finding("NLDS002", f"link is missing {key!r}", path=f"{path}.{key}"))
            continue
        for key in entry:
            if key not in ("from", "to"):
                findings.append(finding("NLDS010", f"unexpected link key {key!r}", path=f"{path}.{key}"))
        from_id, to_id = entry["from"], entry["to"]
        if not isinstance(from_id, str) or not isinstance(to_id, str):
            findings.append(finding("NLDS010", "link endpoints must be layer id strings", path=path))
            continue
        dangling = [endpoint for endpoint in (from_id, to_id) if endpoint not in ids]
        if dangling:
            for endpoint in dangling:
                findings.append(
                    finding("NLDS004", f"link endpoint {endpoint!r} names no layer", path=path)
                )
            continue
        if from_id == to_id:
            findings.append(finding("NLDS009", f"layer {from_id!r} links to itself", layer_ids=(from_id,), path=path))
            continue
        if (from_id, to_id) in seen:
            findings.append(
                finding("NLDS008", f"duplicate link {from_id!r} -> {to_id!r}", link=Link(from_id, to_id), path=path)
            )
            continue
        seen.add((from_id, to_id))
        links.append(Link(from_id=from_id, to_id=to_id))
    return tuple(links)


def _parse_hyperparameters(raw, findings: list[Diagnostic]) -> Hyperparameters | None:
    if not isinstance(raw, dict):
        findings.append(finding("NLDS010", "hyperparameters must be an object", path="hyperparameters"))
        return None
    before = len(findings)
    for key in HYPERPARAMETER_KEYS:
        if key == "metrics":
            continue  # optional, defaults to no metrics
        if key not in raw:
            findings.append(finding("NLDS002", f"missing hyperparameter {key!r}", path=f"hyperparameters.{key}"))
    for key in raw:
        if key not in HYPERPARAMETER_KEYS:
            findings.append(finding("NLDS010", f"unexpected hyperparameter {key!r}", path=f"hyperparameters.{key}"))
    if len(findings) > before:
        return None

    optimizer = _parse_optimizer(raw["optimizer"], findings)

    loss = raw["loss"]
    if loss not in LOSS_KINDS:
        findings.append(
            finding("NLDS010", f"loss must be one of {', '.join(LOSS_KINDS)}", path="hyperparameters.loss")
        )

    batch_size = _positive_int(raw["batch_size"], "hyperparameters.batch_size", findings)
    epochs = _positive_int(raw["epochs"], "hyperparameters.epochs", findings)

    metrics_raw = raw.get("metrics", [])
    metrics: tuple[str, ...] = ()
    if not isinstance(metrics_raw, list) or not all(m in METRIC_KINDS for m in metrics_raw):
        findings.append(
            finding(
                "NLDS010",
                f"metrics must be a list drawn from {', '.join(METRIC_KINDS)}",
                path="hyperparameters.metrics",
            )
        )
    else:
        metrics = tuple(metrics_raw)

    if len(findings) > before or optimizer is None:
        return None
    return Hyperparameters(optimizer=optimizer, loss=loss, batch_size=batch_size, epochs=epochs, metrics=metrics)


def _parse_optimizer(raw, findings: list[Diagnostic]) -> Optimizer | None:
    if not isinstance(raw, dict):
        findings.append(finding("NLDS010", "optimizer must be an object", path="hyperparameters.optimizer"))
        return None
    before = len(findings)
    for key in raw:
        if key not in ("kind", "learning_rate", "extra"):
            findings.append(
                finding("NLDS010", f"unexpected optimizer key {key!r}", path=f"hyperparameters.optimizer.{key}")
            )
    for key in ("kind", "learning_rate"):
        if key not in raw:
            findings.append(finding("NLDS002", f"missing optimizer {key!r}", path=f"hyperparameters.optimizer.{key}"))
    if len(findings) > before:
        return None

    kind = raw["kind"]
    if kind not in OPTIMIZER_KINDS:
        findings.append(
            finding(
                "NLDS010",
                f"optimizer kind must be one of {', '.join(OPTIMIZER_KINDS)}",
                path="hyperparameters.optimizer.kind",
            )
        )
    learning_rate = raw["learning_rate"]
    if not isinstance(learning_rate, (int, float)) or isinstance(learning_rate, bool) or learning_rate <= 0:
        findings.append(
            finding("NLDS010", "learning_rate must be a positive number", path="hyperparameters.optimizer.learning_rate")
        )
    extra_raw = raw.get("extra", {})
    extra: dict[str, ParamValue] = {}
    if not isinstance(extra_raw, dict):
        findings.append(finding("NLDS010", "optimizer extra must be an object", path="hyperparameters.optimizer.extra"))
    else:
        for key, value in extra_raw.items():
            converted = _convert_value(value)
            if converted is None:
                findings.append(
                    finding(
                        "NLDS010",
                        "optimizer extra values must be scalars",
                        path=f"hyperparameters.optimizer.extra.{key}",
                    )
                )
            else:
                extra[key] = converted
    if len(findings) > before:
        return None
    return Optimizer(kind=kind, learning_rate=float(learning_rate), extra=extra)


def _positive_int(value, path: str, findings: list[Diagnostic]) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        findings.append(finding("NLDS010", "must be a positive integer", path=path))
        return 1
    return value


def _json_value(value: ParamValue):
    return list(value) if isinstance(value, tuple) else value


def serialize_nlds(doc: ModelDocument) -> str:
    """Render the unique canonical text of a document."""
    h = doc.hyperparameters
    payload = {
        "nlds_version": doc.nlds_version,
        "name": doc.name,
        "layers": [
            {
                "id": layer.id,
                "kind": layer.kind.value,
                "params": {key: _json_value(layer.params[key]) for key in sorted(layer.params)},
            }
            for layer in doc.layers
        ],
        "links": [{"from": link.from_id, "to": link.to_id} for link in doc.links],
        "hyperparameters": {
            "batch_size": h.batch_size,
            "epochs": h.epochs,
            "loss": h.loss,
            "metrics": list(h.metrics),
            "optimizer": {
                "extra": {key: _json_value(h.optimizer.extra[key]) for key in sorted(h.optimizer.extra)},
                "kind": h.optimizer.kind,
                "learning_rate": h.optimizer.learning_rate,
            },
        },
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
