"""Deterministic source emission for validated documents.

``generate`` re-validates (with the target) before emitting and refuses
documents that do not pass; emitted text is byte-identical for identical
(document, target, options).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from ..capability import Target
from ..diagnostics import ValidationReport
from ..document import LayerKind, ModelDocument, ParamValue
from ..shapes import Shape
from . import caffe, keras_tf, torch_dialect
from .common import EmissionPlan, PlannedLayer, plan_emission, sanitize_identifier


@dataclass(frozen=True)
class EmitOptions:
    include_training: bool = True  # forced off for caffe-prototxt
    dataset_placeholder: str = "dataset"


@dataclass(frozen=True)
class GeneratedArtifact:
    target: Target
    files: tuple[tuple[str, str], ...]  # (relative path, utf-8 content)
    entrypoint: str

    def entry_content(self) -> str:
        return dict(self.files)[self.entrypoint]

    def to_json(self) -> dict:
        return {
            "target": self.target.value,
            "entrypoint": self.entrypoint,
            "files": [{"path": path, "content": content} for path, content in self.files],
        }


class GenerationRefused(Exception):
    """The document does not pass validation for the requested target."""

    def __init__(self, report: ValidationReport):
        super().__init__("document failed validation; no code generated")
        self.report = report


def generate(doc: ModelDocument, target: Target, options: EmitOptions = EmitOptions()) -> GeneratedArtifact:
    from ..validation import validate_document

    if target is Target.CAFFE_PROTOTXT:
        options = replace(options, include_training=False)

    report = validate_document(doc, target)
    if not report.passed:
        raise GenerationRefused(report)

    plan = plan_emission(doc)
    if target is Target.CAFFE_PROTOTXT:
        entrypoint, content = "model.prototxt", caffe.emit(plan)
    elif target is Target.PYTORCH:
        entrypoint = "model.py"
        content = torch_dialect.emit(plan, options.include_training, options.dataset_placeholder)
    else:
        entrypoint = "model.py"
        content = keras_tf.emit(plan, target, options.include_training, options.dataset_placeholder)
    return GeneratedArtifact(target=target, files=((entrypoint, content),), entrypoint=entrypoint)


def emit_layer(
    kind: LayerKind,
    params: dict[str, ParamValue],
    input_names: list[str],
    target: Target,
    input_shapes: list[Shape] = (),  # dialects that size weights need these
    output_shape: Shape | None = None,
    layer_id: str = "layer",
) -> tuple[str, str]:
    """One layer's code fragment plus its output name, outside a full plan."""
    from ..document import Layer
    from ..registry import effective_params
    from ..shapes import infer_layer_output

    merged = effective_params(Layer(layer_id, kind, params))
    shapes = tuple(input_shapes)
    if output_shape is None:
        output_shape = infer_layer_output(kind, merged, list(shapes))
    planned = PlannedLayer(
        layer=Layer(layer_id, kind, params),
        name=sanitize_identifier(layer_id, set()),
        params=merged,
        input_names=tuple(input_names),
        input_shapes=shapes,
        output_shape=output_shape,
    )
    if target is Target.CAFFE_PROTOTXT:
        lines = ["layer {", f'  name: "{planned.name}"', f'  type: "{caffe._layer_type(planned)}"']
        for bottom in planned.input_names:
            lines.append(f'  bottom: "{bottom}"')
        lines.append(f'  top: "{planned.name}"')
        lines += caffe._param_block(planned)
        lines.append("}")
        return "\n".join(lines), planned.name
    if target is Target.PYTORCH:
        ctor = torch_dialect.module_constructor(planned)
        fragment = f"self.{planned.name} = {ctor}" if ctor else f"# {planned.name} is wired in forward()"
        return fragment, planned.name
    root = "tf.keras.layers" if target is Target.TENSORFLOW else "layers"
    feed = input_names[0] if len(input_names) == 1 else "[" + ", ".join(input_names) + "]"
    ctor = keras_tf.layer_constructor(planned, root)
    return f"{planned.name} = {ctor}({feed})", planned.name


def write_artifact(artifact: GeneratedArtifact, out_dir: Path, model_name: str) -> Path:
    """Write the artifact under out_dir/<model-name>/<target>/, returning the entrypoint path."""
    safe = "".join(c if c.isalnum() or c in "._-" else "-" for c in model_name) or "model"
    base = out_dir / safe / artifact.target.value
    base.mkdir(parents=True, exist_ok=True)
    for path, content in artifact.files:
        (base / path).write_text(content, encoding="utf-8")
    return base / artifact.entrypoint


__all__ = [
    "EmitOptions",
    "EmissionPlan",
    "GeneratedArtifact",
    "GenerationRefused",
    "emit_layer",
    "generate",
    "plan_emission",
    "write_artifact",
]
