"""Shared code-generation machinery: identifier sanitation and the emission plan.

The plan walks a validated document once and hands every emitter the same
topologically ordered view: effective params, unique emission names, input
wiring, and propagated shapes (dialects such as the torch one need input
channel counts).
"""
from __future__ import annotations

import keyword
from dataclasses import dataclass

from ..document import Layer, LayerKind, ModelDocument, ParamValue
from ..graph import build_graph, is_chain, topological_order
from ..registry import effective_params
from ..shapes import Shape, propagate


def sanitize_identifier(raw: str, used: set[str]) -> str:
    """Deterministic mapping from a layer id to a safe emission name.

    Lowercase, non-alphanumerics become underscores, a leading digit gets a
    prefix, and collisions get a numeric suffix. The result is stable for a
    given document.
    """
    cleaned = "".join(c if c.isalnum() else "_" for c in raw.lower())
    cleaned = cleaned.strip("_") or "layer"
    if cleaned[0].isdigit():
        cleaned = "l_" + cleaned
    if keyword.iskeyword(cleaned):
        cleaned += "_"
    name = cleaned
    n = 2
    while name in used:
        name = f"{cleaned}_{n}"
        n += 1
    used.add(name)
    return name


def class_name_for(model_name: str) -> str:
    parts = [p for p in "".join(c if c.isalnum() else " " for c in model_name).split() if p]
    name = "".join(p.capitalize() for p in parts) or "Model"
    if name[0].isdigit():
        name = "Model" + name
    return name


@dataclass(frozen=True)
class PlannedLayer:
    layer: Layer
    name: str
    params: dict[str, ParamValue]
    input_names: tuple[str, ...]
    input_shapes: tuple[Shape, ...]
    output_shape: Shape

    @property
    def kind(self) -> LayerKind:
        return self.layer.kind


@dataclass(frozen=True)
class EmissionPlan:
    doc: ModelDocument
    order: tuple[PlannedLayer, ...]  # topological; Input and Output markers included
    chain: bool

    def by_id(self, layer_id: str) -> PlannedLayer:
        for planned in self.order:
            if planned.layer.id == layer_id:
                return planned
        raise KeyError(layer_id)

    def inputs(self) -> tuple[PlannedLayer, ...]:
        return tuple(p for p in self.order if p.kind is LayerKind.INPUT)

    def computational(self) -> tuple[PlannedLayer, ...]:
        return tuple(p for p in self.order if p.kind not in (LayerKind.INPUT, LayerKind.OUTPUT))

    def output_value_names(self) -> tuple[str, ...]:
        """The value each Output marker forwards (its sole input's name)."""
        return tuple(p.input_names[0] for p in self.order if p.kind is LayerKind.OUTPUT)


def plan_emission(doc: ModelDocument) -> EmissionPlan:
    """Plan for a document that passed validation levels 1-4."""
    env, flow_findings = propagate(doc)
    if flow_findings or len(env) != len(doc.layers):
        raise ValueError("emission planning requires a fully validated document")

    order = topological_order(doc)
    graph = build_graph(doc)
    used: set[str] = set()
    names = {lid: sanitize_identifier(lid, used) for lid in order}

    planned = []
    for lid in order:
        layer = doc.get_layer(lid)
        pred_ids = graph.predecessors[lid]
        # an Output marker is identity: consumers of it would read its input,
        # but validation guarantees it has no successors
        planned.append(
            PlannedLayer(
                layer=layer,
                name=names[lid],
                params=effective_params(layer),
                input_names=tuple(names[p] for p in pred_ids),
                input_shapes=tuple(env[p] for p in pred_ids),
                output_shape=env[lid],
            )
        )
    return EmissionPlan(doc=doc, order=tuple(planned), chain=is_chain(doc))


def fmt_int_pair(value: ParamValue) -> str:
    assert isinstance(value, tuple)
    return "(" + ", ".join(str(v) for v in value) + ")"


def fmt_shape_tuple(shape: Shape) -> str:
    if len(shape) == 1:
        return f"({shape[0]},)"
    return "(" + ", ".join(str(d) for d in shape) + ")"


def fmt_scalar(value: ParamValue) -> str:
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, str):
        return f'"{value}"'
    if isinstance(value, tuple):
        return fmt_int_pair(value)
    return repr(value)


def same_padding_pair(kernel: tuple[int, int]) -> tuple[int, int]:
    """Symmetric padding approximating same placement for strided windows."""
    return ((kernel[0] - 1) // 2, (kernel[1] - 1) // 2)


def torch_dim(axis: int, rank: int) -> int:
    """Map a batchless channels-last axis to a torch dim (batch-first layout).

    Rank-3 tensors are channels-first in the torch dialect: (H, W, C) data
    lives in a (N, C, H, W) tensor.
    """
    norm = axis + rank if axis < 0 else axis
    if rank == 3:
        return {0: 2, 1: 3, 2: 1}[norm]
    return norm + 1
