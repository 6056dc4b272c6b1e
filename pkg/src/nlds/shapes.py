"""Tensor shape inference and propagation.

Shapes are tuples of positive ints with the batch dimension excluded;
rank is 1 to 3. Conventions: rank-3 is channels-last (height, width,
channels); rank-2 is a sequence (steps, features); rank-1 is a flat
feature vector. These feed flow validation and the code generators.
"""
from __future__ import annotations

import math

from .diagnostics import Diagnostic, finding
from .document import Layer, LayerKind, ModelDocument, ParamValue
from .graph import build_graph, reachable_from_inputs, topological_order
from .registry import effective_params, registry_lookup

Shape = tuple[int, ...]
ShapeEnv = dict[str, Shape]

SHAPE_PRESERVING = frozenset(
    {
        LayerKind.OUTPUT,
        LayerKind.DROPOUT,
        LayerKind.BATCHNORM2D,
        LayerKind.RELU,
        LayerKind.TANH,
        LayerKind.SIGMOID,
        LayerKind.SOFTMAX,
    }
)


class ShapeInferenceError(Exception):
    """Shape rules cannot produce an output; ``code`` is the flow rule violated."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def conv_out_dim(n: int, k: int, s: int, padding: str) -> int:
    """Output extent of a strided window of size k over an extent of n.

    valid places the window fully inside the input; same pads so that the
    output is ceil(n / s).
    """
    if n < 1 or k < 1 or s < 1:
        raise ValueError(f"extents must be positive, got n={n} k={k} s={s}")
    if padding == "same":
        return math.ceil(n / s)
    if padding == "valid":
        if k > n:
            raise ShapeInferenceError(
                "FLOW003", f"window of size {k} cannot slide inside an extent of {n} with valid padding"
            )
        return (n - k) // s + 1
    raise ValueError(f"padding must be 'same' or 'valid', got {padding!r}")


def infer_layer_output(kind: LayerKind, params: dict[str, ParamValue], inputs: list[Shape]) -> Shape:
    """Output shape of one layer given its effective params and input shapes.

    Raises ShapeInferenceError with the flow rule code on rank mismatch
    (FLOW002), infeasible extents (FLOW003), or merge disagreements
    (FLOW004). Arity must already hold; violating it is a caller bug.
    """
    schema = registry_lookup(kind)
    if not (schema.min_inputs <= len(inputs) and (schema.max_inputs is None or len(inputs) <= schema.max_inputs)):
        raise ValueError(f"{kind} expects {schema.min_inputs}..{schema.max_inputs} inputs, got {len(inputs)}")
    for shape in inputs:
        if len(shape) not in schema.input_ranks:
            allowed = ",".join(str(r) for r in sorted(schema.input_ranks))
            raise ShapeInferenceError(
                "FLOW002", f"{kind} expects input rank {allowed}, got rank {len(shape)} {_fmt(shape)}"
            )

    if kind is LayerKind.INPUT:
        return tuple(params["shape"])  # type: ignore[arg-type]
    if kind in SHAPE_PRESERVING:
        return inputs[0]
    if kind is LayerKind.CONV2D:
        h, w, _ = inputs[0]
        kh, kw = params["kernel"]  # type: ignore[misc]
        stride = int(params["stride"])  # type: ignore[arg-type]
        padding = str(params["padding"])
        return (
            conv_out_dim(h, kh, stride, padding),
            conv_out_dim(w, kw, stride, padding),
            int(params["filters"]),  # type: ignore[arg-type]
        )
    if kind is LayerKind.POOL2D:
        h, w, c = inputs[0]
        ph, pw = params["pool_size"]  # type: ignore[misc]
        # stride defaults to the window size when omitted
        stride = params.get("stride")
        sh, sw = (int(stride), int(stride)) if stride is not None else (ph, pw)  # type: ignore[arg-type]
        padding = str(params["padding"])
        return (conv_out_dim(h, ph, sh, padding), conv_out_dim(w, pw, sw, padding), c)
    if kind is LayerKind.DENSE:
        return (int(params["units"]),)  # type: ignore[arg-type]
    if kind is LayerKind.FLATTEN:
        return (math.prod(inputs[0]),)
    if kind is LayerKind.EMBEDDING:
        return (inputs[0][0], int(params["embedding_dim"]))  # type: ignore[arg-type]
    if kind is LayerKind.LSTM:
        steps, _ = inputs[0]
        units = int(params["units"])  # type: ignore[arg-type]
        return (steps, units) if params.get("return_sequences") else (units,)
    if kind is LayerKind.CONCAT:
        return _concat_shape(inputs, int(params["axis"]))  # type: ignore[arg-type]
    if kind is LayerKind.ADD:
        if any(shape != inputs[0] for shape in inputs):
            raise ShapeInferenceError("FLOW004", "Add inputs must be identical, got " + _fmt_all(inputs))
        return inputs[0]
    raise ValueError(f"no shape rule for {kind}")


def _concat_shape(inputs: list[Shape], axis: int) -> Shape:
    rank = len(inputs[0])
    if any(len(shape) != rank for shape in inputs):
        raise ShapeInferenceError("FLOW004", "Concat inputs must share a rank, got " + _fmt_all(inputs))
    norm = axis + rank if axis < 0 else axis
    if not 0 <= norm < rank:
        raise ShapeInferenceError("FLOW004", f"Concat axis {axis} is out of range for rank {rank}")
    for d in range(rank):
        if d != norm and any(shape[d] != inputs[0][d] for shape in inputs):
            raise ShapeInferenceError(
                "FLOW004", f"Concat inputs must agree on every axis but {norm}, got " + _fmt_all(inputs)
            )
    summed = sum(shape[norm] for shape in inputs)
    return tuple(summed if d == norm else inputs[0][d] for d in range(rank))


def propagate(doc: ModelDocument) -> tuple[ShapeEnv, list[Diagnostic]]:
    """Shapes for every layer reachable from an Input, in topological order.

    Returns the environment plus flow diagnostics: FLOW005 per unreachable
    layer and one FLOW002/003/004 per failing layer. All findings are
    collected; layers downstream of a failure are left unshaped without
    piling on cascade errors. The document must be acyclic (CycleError
    otherwise) and clean through level 3.
    """
    order = topological_order(doc)
    graph = build_graph(doc)
    input_ids = [layer.id for layer in doc.layers if layer.kind is LayerKind.INPUT]
    reachable = reachable_from_inputs(doc, input_ids)

    findings: list[Diagnostic] = []
    for layer in doc.layers:
        if layer.id not in reachable:
            findings.append(
                finding("FLOW005", f"layer {layer.id!r} has no path from any Input", layer_ids=(layer.id,))
            )

    env: ShapeEnv = {}
    for lid in order:
        if lid not in reachable:
            continue
        layer = doc.get_layer(lid)
        pred_ids = graph.predecessors[lid]
        if any(p not in env for p in pred_ids):
            continue  # an upstream layer already failed; don't cascade
        try:
            env[lid] = infer_layer_output(layer.kind, effective_params(layer), [env[p] for p in pred_ids])
        except ShapeInferenceError as exc:
            findings.append(finding(exc.code, exc.message, layer_ids=(lid,)))
    return env, findings


def format_shape(shape: Shape) -> str:
    return "(" + ", ".join(str(d) for d in shape) + ")"


def _fmt(shape: Shape) -> str:
    return format_shape(shape)


def _fmt_all(shapes: list[Shape]) -> str:
    return ", ".join(format_shape(s) for s in shapes)


def layer_output_shape(layer: Layer, inputs: list[Shape]) -> Shape:
    """Convenience wrapper applying registry defaults before inference."""
    return infer_layer_output(layer.kind, effective_params(layer), inputs)
