"""Layer registry: one schema per layer kind.

The registry is pure data. It drives parameter validation, adjacency rank
checks, the designer palette, default filling, and fix suggestions, so a
new layer kind is a new table row, not new engine code.
"""
from __future__ import annotations

from dataclasses import dataclass

from .document import Layer, LayerKind, ParamValue

PALETTE_GROUPS = (
    "io",
    "core",
    "convolutional",
    "recurrent",
    "activation",
    "merge",
    "regularization",
)

# Value types a parameter may declare. "int-pair" is exactly two integers
# (e.g. a kernel (h, w)); "int-list" is one to three integers (a declared
# input shape).
VALUE_TYPES = ("int", "real", "bool", "enum", "int-pair", "int-list")


@dataclass(frozen=True)
class ParamSpec:
    """Declaration of one layer parameter.

    ``required`` params without a ``default`` must be supplied explicitly;
    validation flags their absence. ``fallback`` is the value a fix
    suggestion proposes for such params (it is never auto-applied).
    Numeric bounds apply element-wise to int-pair/int-list values.
    """

    name: str
    value_type: str
    required: bool = False
    default: ParamValue | None = None
    min_value: float | None = None
    max_value: float | None = None
    max_exclusive: bool = False
    choices: tuple[str, ...] = ()
    min_len: int = 1
    max_len: int = 3
    fallback: ParamValue | None = None
    doc: str = ""

    def type_ok(self, value: ParamValue) -> bool:
        if self.value_type == "int":
            return isinstance(value, int) and not isinstance(value, bool)
        if self.value_type == "real":
            return isinstance(value, (int, float)) and not isinstance(value, bool)
        if self.value_type == "bool":
            return isinstance(value, bool)
        if self.value_type == "enum":
            return isinstance(value, str)
        if self.value_type == "int-pair":
            return isinstance(value, tuple) and len(value) == 2
        if self.value_type == "int-list":
            return isinstance(value, tuple) and self.min_len <= len(value) <= self.max_len
        raise ValueError(f"unknown value type {self.value_type!r}")

    def range_ok(self, value: ParamValue) -> bool:
        """Check bounds; assumes ``type_ok`` already passed."""
        if self.value_type == "enum":
            return value in self.choices
        if self.value_type in ("int-pair", "int-list"):
            return all(self._scalar_in_range(v) for v in value)  # type: ignore[union-attr]
        if self.value_type in ("int", "real"):
            return self._scalar_in_range(value)  # type: ignore[arg-type]
        return True

    def _scalar_in_range(self, value: float) -> bool:
        if self.min_value is not None and value < self.min_value:
            return False
        if self.max_value is not None:
            if self.max_exclusive and value >= self.max_value:
                return False
            if not self.max_exclusive and value > self.max_value:
                return False
        return True

    def suggested_value(self) -> ParamValue | None:
        """Value a set_param fix proposes: the default, else the fallback."""
        return self.default if self.default is not None else self.fallback

    def describe_range(self) -> str:
        if self.value_type == "enum":
            return "one of " + ", ".join(self.choices)
        parts = []
        if self.min_value is not None:
            parts.append(f">= {self.min_value:g}")
        if self.max_value is not None:
            parts.append(("< " if self.max_exclusive else "<= ") + f"{self.max_value:g}")
        return " and ".join(parts) if parts else "unconstrained"


@dataclass(frozen=True)
class LayerSchema:
    """Everything the engines need to know about one layer kind."""

    kind: LayerKind
    param_specs: tuple[ParamSpec, ...]
    input_ranks: frozenset[int]
    output_ranks: frozenset[int]
    min_inputs: int
    max_inputs: int | None  # None = unbounded
    palette_group: str
    doc: str

    def param_spec(self, name: str) -> ParamSpec | None:
        for spec in self.param_specs:
            if spec.name == name:
                return spec
        return None

    def param_names(self) -> tuple[str, ...]:
        return tuple(spec.name for spec in self.param_specs)


def _schema(
    kind: LayerKind,
    params: tuple[ParamSpec, ...],
    input_ranks: set[int],
    output_ranks: set[int],
    arity: tuple[int, int | None],
    group: str,
    doc: str,
) -> LayerSchema:
    return LayerSchema(
        kind=kind,
        param_specs=params,
        input_ranks=frozenset(input_ranks),
        output_ranks=frozenset(output_ranks),
        min_inputs=arity[0],
        max_inputs=arity[1],
        palette_group=group,
        doc=doc,
    )


_INT_POS = {"min_value": 1}

_REGISTRY: dict[LayerKind, LayerSchema] = {
    LayerKind.INPUT: _schema(
        LayerKind.INPUT,
        (
            ParamSpec(
                "shape",
                "int-list",
                required=True,
                min_value=1,
                fallback=(32, 32, 3),
                doc="Declared shape of the data fed to the model, batch dimension excluded. "
                "One to three dims: (features), (steps, features) or (height, width, channels).",
            ),
        ),
        input_ranks=set(),
        output_ranks={1, 2, 3},
        arity=(0, 0),
        group="io",
        doc="Entry point of the model. Declares the shape of the incoming data.",
    ),
    LayerKind.OUTPUT: _schema(
        LayerKind.OUTPUT,
        (),
        input_ranks={1, 2, 3},
        output_ranks={1, 2, 3},
        arity=(1, 1),
        group="io",
        doc="Marks the tensor the model produces. Passes its input through unchanged.",
    ),
    LayerKind.CONV2D: _schema(
        LayerKind.CONV2D,
        (
            ParamSpec(
                "filters",
                "int",
                required=True,
                fallback=32,
                **_INT_POS,
                doc="Number of convolution filters; becomes the channel count of the output.",
            ),
            ParamSpec(
                "kernel",
                "int-pair",
                required=True,
                default=(3, 3),
                min_value=1,
                doc="Spatial extent (h, w) of each filter.",
            ),
            ParamSpec("stride", "int", default=1, **_INT_POS, doc="Step between filter applications, both axes."),
            ParamSpec(
                "padding",
                "enum",
                default="same",
                choices=("same", "valid"),
                doc="same keeps ceil(extent / stride); valid slides the kernel inside the input only.",
            ),
        ),
        input_ranks={3},
        output_ranks={3},
        arity=(1, 1),
        group="convolutional",
        doc="2D convolution over (height, width, channels) data.",
    ),
    LayerKind.POOL2D: _schema(
        LayerKind.POOL2D,
        (
            ParamSpec("pool_size", "int-pair", default=(2, 2), min_value=1, doc="Window extent (h, w)."),
            ParamSpec(
                "stride",
                "int",
                **_INT_POS,
                doc="Step between windows, both axes. Defaults to the window size when omitted.",
            ),
            ParamSpec("mode", "enum", default="max", choices=("max", "avg"), doc="Pooling reduction."),
            ParamSpec("padding", "enum", default="valid", choices=("same", "valid"), doc="Window placement rule."),
        ),
        input_ranks={3},
        output_ranks={3},
        arity=(1, 1),
        group="convolutional",
        doc="2D pooling over (height, width, channels) data; channel count is preserved.",
    ),
    LayerKind.DENSE: _schema(
        LayerKind.DENSE,
        (
            ParamSpec(
                "units",
                "int",
                required=True,
                fallback=10,
                **_INT_POS,
                doc="Output feature count of the fully connected transform.",
            ),
        ),
        input_ranks={1},
        output_ranks={1},
        arity=(1, 1),
        group="core",
        doc="Fully connected layer over a flat feature vector.",
    ),
    LayerKind.FLATTEN: _schema(
        LayerKind.FLATTEN,
        (),
        input_ranks={2, 3},
        output_ranks={1},
        arity=(1, 1),
        group="core",
        doc="Collapses a multi-dim tensor into a single feature vector.",
    ),
    LayerKind.DROPOUT: _schema(
        LayerKind.DROPOUT,
        (
            ParamSpec(
                "rate",
                "real",
                default=0.5,
                min_value=0.0,
                max_value=1.0,
                max_exclusive=True,
                doc="Fraction of inputs zeroed during training; in [0, 1).",
            ),
        ),
        input_ranks={1, 2, 3},
        output_ranks={1, 2, 3},
        arity=(1, 1),
        group="regularization",
        doc="Randomly drops activations during training. Shape preserving.",
    ),
    LayerKind.BATCHNORM2D: _schema(
        LayerKind.BATCHNORM2D,
        (
            ParamSpec("momentum", "real", default=0.99, min_value=0.0, max_value=1.0, doc="Running-statistics momentum."),
            ParamSpec("epsilon", "real", default=0.001, min_value=0.0, max_exclusive=False, doc="Variance floor."),
        ),
        input_ranks={3},
        output_ranks={3},
        arity=(1, 1),
        group="regularization",
        doc="Per-channel batch normalization of (height, width, channels) data. Shape preserving.",
    ),
    LayerKind.RELU: _schema(
        LayerKind.RELU,
        (),
        input_ranks={1, 2, 3},
        output_ranks={1, 2, 3},
        arity=(1, 1),
        group="activation",
        doc="Rectified linear activation. Shape preserving.",
    ),
    LayerKind.TANH: _schema(
        LayerKind.TANH,
        (),
        input_ranks={1, 2, 3},
        output_ranks={1, 2, 3},
        arity=(1, 1),
        group="activation",
        doc="Hyperbolic tangent activation. Shape preserving.",
    ),
    LayerKind.SIGMOID: _schema(
        LayerKind.SIGMOID,
        (),
        input_ranks={1, 2, 3},
        output_ranks={1, 2, 3},
        arity=(1, 1),
        group="activation",
        doc="Logistic activation. Shape preserving.",
    ),
    LayerKind.SOFTMAX: _schema(
        LayerKind.SOFTMAX,
        (),
        input_ranks={1, 2, 3},
        output_ranks={1, 2, 3},
        arity=(1, 1),
        group="activation",
        doc="Normalizes the last axis to a probability distribution. Shape preserving.",
    ),
    LayerKind.EMBEDDING: _schema(
        LayerKind.EMBEDDING,
        (
            ParamSpec(
                "vocab_size",
                "int",
                required=True,
                fallback=10000,
                **_INT_POS,
                doc="Number of distinct token ids the table covers.",
            ),
            ParamSpec(
                "embedding_dim",
                "int",
                required=True,
                fallback=64,
                **_INT_POS,
                doc="Feature count of each embedded token.",
            ),
        ),
        input_ranks={1},
        output_ranks={2},
        arity=(1, 1),
        group="core",
        doc="Maps a token-id sequence of length T to a (T, embedding_dim) tensor.",
    ),
    LayerKind.LSTM: _schema(
        LayerKind.LSTM,
        (
            ParamSpec("units", "int", required=True, fallback=64, **_INT_POS, doc="Size of the hidden state."),
            ParamSpec(
                "return_sequences",
                "bool",
                default=False,
                doc="Emit the full (T, units) sequence instead of the final state.",
            ),
        ),
        input_ranks={2},
        output_ranks={1, 2},
        arity=(1, 1),
        group="recurrent",
        doc="Long short-term memory over a (steps, features) sequence.",
    ),
    LayerKind.CONCAT: _schema(
        LayerKind.CONCAT,
        (
            ParamSpec(
                "axis",
                "int",
                default=-1,
                doc="Axis the inputs are joined along; negative counts from the end.",
            ),
        ),
        input_ranks={1, 2, 3},
        output_ranks={1, 2, 3},
        arity=(2, None),
        group="merge",
        doc="Joins tensors that agree on every axis except the chosen one.",
    ),
    LayerKind.ADD: _schema(
        LayerKind.ADD,
        (),
        input_ranks={1, 2, 3},
        output_ranks={1, 2, 3},
        arity=(2, None),
        group="merge",
        doc="Element-wise sum of identically shaped tensors.",
    ),
}


def registry_lookup(kind: LayerKind) -> LayerSchema:
    """Schema for a catalog kind. Total over LayerKind."""
    return _REGISTRY[kind]


def all_schemas() -> tuple[LayerSchema, ...]:
    return tuple(_REGISTRY[kind] for kind in LayerKind)


def effective_params(layer: Layer) -> dict[str, ParamValue]:
    """The layer's params with registry defaults filled in for absent ones."""
    schema = registry_lookup(layer.kind)
    merged: dict[str, ParamValue] = {}
    for spec in schema.param_specs:
        if spec.name in layer.params:
            merged[spec.name] = layer.params[spec.name]
        elif spec.default is not None:
            merged[spec.name] = spec.default
    return merged


def default_params(kind: LayerKind) -> dict[str, ParamValue]:
    """Registry defaults for a freshly placed layer of this kind."""
    return {spec.name: spec.default for spec in registry_lookup(kind).param_specs if spec.default is not None}


def _self_check() -> None:
    """Registry consistency, asserted once at import time."""
    for kind in LayerKind:
        schema = _REGISTRY[kind]
        assert schema.kind is kind
        assert schema.palette_group in PALETTE_GROUPS, kind
        for spec in schema.param_specs:
            assert spec.value_type in VALUE_TYPES, (kind, spec.name)
            if spec.default is not None:
                assert spec.type_ok(spec.default), (kind, spec.name)
                assert spec.range_ok(spec.default), (kind, spec.name)
            if spec.required:
                assert spec.suggested_value() is not None, (kind, spec.name)
            if spec.fallback is not None:
                assert spec.type_ok(spec.fallback) and spec.range_ok(spec.fallback), (kind, spec.name)


_self_check()
