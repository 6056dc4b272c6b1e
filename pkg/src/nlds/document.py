"""Core NLDS document model: layers, links, and hyperparameters.

A document is the unit everything else operates on. The three parts
(layer definitions, layer links, hyperparameter definitions) fully
describe a model's design. Instances are treated as immutable; editing
operations return new documents.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

NLDS_VERSION = "1.0"

# A layer parameter is a scalar or a tuple of integers. Tuples cover both
# pairs such as a kernel (h, w) and declared input shapes of 1-3 dims.
ParamValue = int | float | bool | str | tuple[int, ...]

OPTIMIZER_KINDS = ("adam", "rmsprop", "sgd")
LOSS_KINDS = ("binary_crossentropy", "categorical_crossentropy", "mse")
METRIC_KINDS = ("accuracy", "loss")


class LayerKind(str, Enum):
    """The closed catalog of layer kinds. Unknown kinds fail at parse time."""

    INPUT = "Input"
    OUTPUT = "Output"
    CONV2D = "Conv2D"
    POOL2D = "Pool2D"
    DENSE = "Dense"
    FLATTEN = "Flatten"
    DROPOUT = "Dropout"
    BATCHNORM2D = "BatchNorm2D"
    RELU = "ReLU"
    TANH = "TanH"
    SIGMOID = "Sigmoid"
    SOFTMAX = "Softmax"
    EMBEDDING = "Embedding"
    LSTM = "LSTM"
    CONCAT = "Concat"
    ADD = "Add"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Layer:
    """One node of the model graph."""

    id: str
    kind: LayerKind
    params: dict[str, ParamValue] = field(default_factory=dict)


@dataclass(frozen=True)
class Link:
    """A directed data-flow edge between two layers."""

    from_id: str
    to_id: str

    def as_pair(self) -> tuple[str, str]:
        return (self.from_id, self.to_id)


@dataclass(frozen=True)
class Optimizer:
    kind: str
    learning_rate: float
    extra: dict[str, ParamValue] = field(default_factory=dict)


@dataclass(frozen=True)
class Hyperparameters:
    """Model-level training parameters, exactly what the training skeleton binds."""

    optimizer: Optimizer
    loss: str
    batch_size: int
    epochs: int
    metrics: tuple[str, ...] = ()


def default_hyperparameters() -> Hyperparameters:
    """The initial hyperparameter block for freshly authored documents."""
    return Hyperparameters(
        optimizer=Optimizer(kind="sgd", learning_rate=0.01),
        loss="categorical_crossentropy",
        batch_size=32,
        epochs=10,
        metrics=("accuracy",),
    )


@dataclass(frozen=True)
class ModelDocument:
    """A complete NLDS document.

    Invariants (enforced by the parser, preserved by editing helpers):
    layer ids are unique non-empty strings, every link endpoint resolves,
    there are no self-links and no duplicate links.
    """

    name: str
    layers: tuple[Layer, ...]
    links: tuple[Link, ...]
    hyperparameters: Hyperparameters
    nlds_version: str = NLDS_VERSION

    def layer_ids(self) -> list[str]:
        return [layer.id for layer in self.layers]

    def layer_index(self, layer_id: str) -> int:
        for i, layer in enumerate(self.layers):
            if layer.id == layer_id:
                return i
        raise KeyError(layer_id)

    def get_layer(self, layer_id: str) -> Layer:
        return self.layers[self.layer_index(layer_id)]

    def has_layer(self, layer_id: str) -> bool:
        return any(layer.id == layer_id for layer in self.layers)

    def has_link(self, from_id: str, to_id: str) -> bool:
        return any(l.from_id == from_id and l.to_id == to_id for l in self.links)

    def with_layers(self, layers: tuple[Layer, ...]) -> ModelDocument:
        return replace(self, layers=layers)

    def with_links(self, links: tuple[Link, ...]) -> ModelDocument:
        return replace(self, links=links)

    def replace_layer(self, layer: Layer) -> ModelDocument:
        updated = tuple(layer if existing.id == layer.id else existing for existing in self.layers)
        return self.with_layers(updated)
