"""NLDS: library-agnostic neural network model descriptions.

Parse and canonicalize model documents, validate them through the
five-level rule book, infer tensor shapes, and emit source code for the
keras, tensorflow, pytorch, and caffe-prototxt dialects. The `nlds` CLI
and the designer HTTP service are thin shells over this package.
"""
from .capability import Target, capability, supported_targets
from .codegen import EmitOptions, GeneratedArtifact, GenerationRefused, emit_layer, generate, write_artifact
from .diagnostics import Diagnostic, FixSuggestion, ValidationReport
from .document import (
    Hyperparameters,
    Layer,
    LayerKind,
    Link,
    ModelDocument,
    Optimizer,
    default_hyperparameters,
)
from .graph import CycleError, build_graph, topological_order
from .parsing import ParseError, parse_nlds, serialize_nlds
from .registry import LayerSchema, ParamSpec, registry_lookup
from .shapes import ShapeInferenceError, conv_out_dim, infer_layer_output, propagate
from .templates import TEMPLATES, task1, task2, task3
from .validation import (
    StaleSuggestionError,
    apply_suggestion,
    validate,
    validate_document,
)

__version__ = "1.0.0"

__all__ = [
    "CycleError",
    "Diagnostic",
    "EmitOptions",
    "FixSuggestion",
    "GeneratedArtifact",
    "GenerationRefused",
    "Hyperparameters",
    "Layer",
    "LayerKind",
    "LayerSchema",
    "Link",
    "ModelDocument",
    "Optimizer",
    "ParamSpec",
    "ParseError",
    "ShapeInferenceError",
    "StaleSuggestionError",
    "TEMPLATES",
    "Target",
    "ValidationReport",
    "apply_suggestion",
    "build_graph",
    "capability",
    "conv_out_dim",
    "default_hyperparameters",
    "emit_layer",
    "generate",
    "infer_layer_output",
    "parse_nlds",
    "propagate",
    "registry_lookup",
    "serialize_nlds",
    "supported_targets",
    "task1",
    "task2",
    "task3",
    "topological_order",
    "validate",
    "validate_document",
    "write_artifact",
]
