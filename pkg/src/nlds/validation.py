"""The five-level validation pipeline.

Levels: 1 document structure, 2 layer parameters, 3 static adjacency,
4 data flow and shapes, 5 target capability. Levels short-circuit: once a
level reports an error, deeper levels do not run, but every violation at
the failing level is reported. Warnings never stop progression.
"""
from __future__ import annotations

from .capability import Target, capability
from .diagnostics import (
    ADD_LINK,
    INSERT_LAYER,
    REMOVE_LINK,
    SET_PARAM,
    Diagnostic,
    FixSuggestion,
    ValidationReport,
    finding,
)
from .document import Layer, LayerKind, Link, ModelDocument
from .graph import CycleError, build_graph, topological_order
from .parsing import ParseError, parse_nlds
from .registry import registry_lookup
from .shapes import propagate


def validate(doc_text: str | bytes, target: Target | None = None) -> ValidationReport:
    """Run the rule book over raw document text.

    Without a target, level 5 is skipped and levels_run records [1, 2, 3, 4].
    All findings are data; this never raises for document problems.
    """
    doc, structure = validate_structure(doc_text)
    diagnostics = list(structure)
    levels_run = [1]
    if doc is not None and not _has_error(structure):
        checks = [(2, validate_params), (3, validate_adjacency), (4, validate_flow)]
        if target is not None:
            checks.append((5, lambda d: validate_platform(d, target)))
        for level, check in checks:
            found = check(doc)
            levels_run.append(level)
            diagnostics.extend(found)
            if _has_error(found):
                break
    diagnostics.sort(key=lambda d: d.level)  # stable: document order kept within a level
    return ValidationReport(diagnostics=tuple(diagnostics), levels_run=tuple(levels_run))


def validate_document(doc: ModelDocument, target: Target | None = None) -> ValidationReport:
    """Validate an already constructed document (it re-enters via canonical text)."""
    from .parsing import serialize_nlds

    return validate(serialize_nlds(doc), target)


def _has_error(diagnostics) -> bool:
    return any(d.is_error for d in diagnostics)


def validate_structure(doc_text: str | bytes) -> tuple[ModelDocument | None, list[Diagnostic]]:
    """Level 1: structure. Delegates to the parser."""
    try:
        return parse_nlds(doc_text), []
    except ParseError as exc:
        return None, list(exc.diagnostics)


def validate_params(doc: ModelDocument) -> list[Diagnostic]:
    """Level 2: per-layer parameter presence, types, and ranges."""
    findings: list[Diagnostic] = []
    for layer in doc.layers:
        schema = registry_lookup(layer.kind)
        for spec in schema.param_specs:
            if spec.name not in layer.params:
                if spec.required and spec.default is None:
                    findings.append(
                        finding(
                            "PRM001",
                            f"{layer.kind} requires parameter {spec.name!r}",
                            layer_ids=(layer.id,),
                            suggestion=FixSuggestion(
                                action=SET_PARAM,
                                layer_id=layer.id,
                                param=spec.name,
                                value=spec.suggested_value(),
                            ),
                        )
                    )
                continue
            value = layer.params[spec.name]
            if not spec.type_ok(value):
                findings.append(
                    finding(
                        "PRM003",
                        f"{spec.name!r} of {layer.kind} must be {spec.value_type}, got {value!r}",
                        layer_ids=(layer.id,),
                    )
                )
            elif not spec.range_ok(value):
                findings.append(
                    finding(
                        "PRM002",
                        f"{spec.name!r} of {layer.kind} must be {spec.describe_range()}, got {value!r}",
                        layer_ids=(layer.id,),
                    )
                )
    return findings


def validate_adjacency(doc: ModelDocument) -> list[Diagnostic]:
    """Level 3: per-link rank compatibility and per-layer arity.

    Works on the registry's static rank table only; no shape numbers.
    A layer with zero inputs is not an arity finding here - whether it is
    reachable at all is a flow question (FLOW005).
    """
    findings: list[Diagnostic] = []
    graph = build_graph(doc)

    for layer in doc.layers:
        schema = registry_lookup(layer.kind)
        n_in = len(graph.predecessors[layer.id])
        n_out = len(graph.successors[layer.id])
        if layer.kind is LayerKind.INPUT and n_in > 0:
            findings.append(
                finding("ADJ003", "Input layers cannot have incoming links", layer_ids=(layer.id,))
            )
        if layer.kind is LayerKind.OUTPUT and n_out > 0:
            findings.append(
                finding("ADJ003", "Output layers cannot have outgoing links", layer_ids=(layer.id,))
            )
        if layer.kind is LayerKind.INPUT:
            continue  # incoming links were handled above as ADJ003
        arity_broken = (0 < n_in < schema.min_inputs) or (schema.max_inputs is not None and n_in > schema.max_inputs)
        if arity_broken:
            expect = (
                f"exactly {schema.min_inputs}"
                if schema.min_inputs == schema.max_inputs
                else f"at least {schema.min_inputs}"
                if schema.max_inputs is None
                else f"{schema.min_inputs} to {schema.max_inputs}"
            )
            findings.append(
                finding(
                    "ADJ002",
                    f"{layer.kind} takes {expect} input(s), got {n_in}",
                    layer_ids=(layer.id,),
                )
            )

    for link in doc.links:
        producer = doc.get_layer(link.from_id)
        consumer = doc.get_layer(link.to_id)
        if consumer.kind is LayerKind.INPUT or producer.kind is LayerKind.OUTPUT:
            continue  # already an ADJ003 above; a rank complaint would only obscure it
        produced = registry_lookup(producer.kind).output_ranks
        accepted = registry_lookup(consumer.kind).input_ranks
        if produced & accepted:
            continue
        suggestion = None
        flatten = registry_lookup(LayerKind.FLATTEN)
        if produced & flatten.input_ranks and flatten.output_ranks & accepted:
            suggestion = FixSuggestion(action=INSERT_LAYER, kind=LayerKind.FLATTEN.value, link=link)
        findings.append(
            finding(
                "ADJ001",
                f"{consumer.kind} cannot follow {producer.kind}: it consumes rank "
                f"{_rank_set(accepted)} but receives rank {_rank_set(produced)}",
                layer_ids=(link.from_id, link.to_id),
                link=link,
                suggestion=suggestion,
            )
        )
    return findings


def _rank_set(ranks) -> str:
    return "/".join(str(r) for r in sorted(ranks))


def validate_flow(doc: ModelDocument) -> list[Diagnostic]:
    """Level 4: cycles, Input/Output presence, reachability, shape propagation."""
    findings: list[Diagnostic] = []

    inputs = [l.id for l in doc.layers if l.kind is LayerKind.INPUT]
    outputs = [l.id for l in doc.layers if l.kind is LayerKind.OUTPUT]
    if not inputs:
        findings.append(finding("FLOW006", "model has no Input layer"))
    if not outputs:
        findings.append(finding("FLOW006", "model has no Output layer"))

    try:
        topological_order(doc)
    except CycleError as exc:
        findings.append(
            finding(
                "FLOW001",
                "layers form a cycle: " + " -> ".join(exc.cycle),
                layer_ids=exc.cycle,
            )
        )
        return findings  # shapes are meaningless on a cyclic graph

    if not inputs:
        return findings  # without an Input, reachability findings would just repeat FLOW006

    _, flow = propagate(doc)
    findings.extend(flow)
    return findings


def validate_platform(doc: ModelDocument, target: Target) -> list[Diagnostic]:
    """Level 5: capability matrix lookup for every layer against the target."""
    findings: list[Diagnostic] = []
    for layer in doc.layers:
        cap = capability(layer.kind, target)
        if not cap.supported:
            note = f" ({cap.note})" if cap.note else ""
            findings.append(
                finding("PLT001", f"{layer.kind} is not supported on {target}{note}", layer_ids=(layer.id,))
            )
            continue
        schema = registry_lookup(layer.kind)
        for name in cap.ignored_params:
            spec = schema.param_spec(name)
            if name in layer.params and (spec is None or layer.params[name] != spec.default):
                note = f" ({cap.note})" if cap.note else ""
                findings.append(
                    finding(
                        "PLT002",
                        f"{target} ignores {name!r} of {layer.kind}{note}",
                        layer_ids=(layer.id,),
                    )
                )
    return findings


class StaleSuggestionError(Exception):
    """The suggestion refers to layers or links the document no longer has."""


def apply_suggestion(doc: ModelDocument, suggestion: FixSuggestion) -> ModelDocument:
    """Apply a fix suggestion, returning the edited document.

    Raises StaleSuggestionError when the document has drifted since the
    suggestion was produced (its endpoints no longer exist).
    """
    if suggestion.action == SET_PARAM:
        assert suggestion.layer_id and suggestion.param is not None and suggestion.value is not None
        if not doc.has_layer(suggestion.layer_id):
            raise StaleSuggestionError(f"layer {suggestion.layer_id!r} no longer exists")
        layer = doc.get_layer(suggestion.layer_id)
        params = dict(layer.params)
        params[suggestion.param] = suggestion.value
        return doc.replace_layer(Layer(id=layer.id, kind=layer.kind, params=params))

    assert suggestion.link is not None
    link = suggestion.link

    if suggestion.action == INSERT_LAYER:
        assert suggestion.kind is not None
        if not doc.has_link(link.from_id, link.to_id):
            raise StaleSuggestionError(f"link {link.from_id!r} -> {link.to_id!r} no longer exists")
        kind = LayerKind(suggestion.kind)
        new_id = _fresh_id(doc, kind)
        layers = doc.layers + (Layer(id=new_id, kind=kind),)
        links = tuple(
            l for l in doc.links if not (l.from_id == link.from_id and l.to_id == link.to_id)
        ) + (Link(link.from_id, new_id), Link(new_id, link.to_id))
        return doc.with_layers(layers).with_links(links)

    if suggestion.action == REMOVE_LINK:
        if not doc.has_link(link.from_id, link.to_id):
            raise StaleSuggestionError(f"link {link.from_id!r} -> {link.to_id!r} no longer exists")
        return doc.with_links(
            tuple(l for l in doc.links if not (l.from_id == link.from_id and l.to_id == link.to_id))
        )

    if suggestion.action == ADD_LINK:
        if not (doc.has_layer(link.from_id) and doc.has_layer(link.to_id)):
            raise StaleSuggestionError("an endpoint of the suggested link no longer exists")
        if doc.has_link(link.from_id, link.to_id):
            raise StaleSuggestionError("the suggested link already exists")
        return doc.with_links(doc.links + (Link(link.from_id, link.to_id),))

    raise ValueError(f"unknown suggestion action {suggestion.action!r}")


def _fresh_id(doc: ModelDocument, kind: LayerKind) -> str:
    base = kind.value.lower()
    n = 1
    while doc.has_layer(f"{base}_{n}"):
        n += 1
    return f"{base}_{n}"
