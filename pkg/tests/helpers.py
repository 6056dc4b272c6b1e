"""Shared builders and randomized generators for the test suite."""
from __future__ import annotations

import random
from itertools import permutations

from nlds.document import (
    Hyperparameters,
    Layer,
    LayerKind,
    Link,
    ModelDocument,
    Optimizer,
    default_hyperparameters,
)
from nlds.registry import all_schemas


def chain_doc(layers: list[Layer], name: str = "model", hp: Hyperparameters | None = None) -> ModelDocument:
    links = tuple(Link(a.id, b.id) for a, b in zip(layers, layers[1:]))
    return ModelDocument(name=name, layers=tuple(layers), links=links, hyperparameters=hp or default_hyperparameters())


def doc_with_links(layers: list[Layer], links: list[tuple[str, str]], name: str = "model") -> ModelDocument:
    return ModelDocument(
        name=name,
        layers=tuple(layers),
        links=tuple(Link(a, b) for a, b in links),
        hyperparameters=default_hyperparameters(),
    )


def minimal_doc() -> ModelDocument:
    """Smallest well-formed model: Input -> Dense -> Softmax -> Output."""
    return chain_doc(
        [
            Layer("in", LayerKind.INPUT, {"shape": (8,)}),
            Layer("dense", LayerKind.DENSE, {"units": 4}),
            Layer("softmax", LayerKind.SOFTMAX),
            Layer("out", LayerKind.OUTPUT),
        ]
    )


def image_head(shape: tuple[int, ...] = (32, 32, 3)) -> Layer:
    return Layer("in", LayerKind.INPUT, {"shape": shape})


def all_topological_orders(ids: list[str], edges: list[tuple[str, str]]) -> list[list[str]]:
    """Brute-force enumeration of every order satisfying all edges (<= 8 nodes)."""
    assert len(ids) <= 8
    valid = []
    for perm in permutations(ids):
        pos = {lid: i for i, lid in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in edges):
            valid.append(list(perm))
    return valid


def _random_param_value(rng: random.Random, spec) -> object:
    if spec.value_type == "int":
        lo = int(spec.min_value) if spec.min_value is not None else -20
        return rng.randint(lo, lo + 100)
    if spec.value_type == "real":
        lo = spec.min_value if spec.min_value is not None else -5.0
        hi = spec.max_value if spec.max_value is not None else lo + 10.0
        val = rng.uniform(lo, hi * 0.99 if spec.max_exclusive else hi)
        return round(val, 4)
    if spec.value_type == "bool":
        return rng.random() < 0.5
    if spec.value_type == "enum":
        return rng.choice(spec.choices)
    if spec.value_type == "int-pair":
        return (rng.randint(1, 9), rng.randint(1, 9))
    if spec.value_type == "int-list":
        return tuple(rng.randint(1, 64) for _ in range(rng.randint(spec.min_len, spec.max_len)))
    raise AssertionError(spec.value_type)


def random_document(rng: random.Random) -> ModelDocument:
    """A random document satisfying all parse-level (type) invariants.

    Flow validity is not attempted; serialization and parsing are total on
    any type-valid document, which is exactly what round-trip checks need.
    """
    schemas = all_schemas()
    n = rng.randint(1, 12)
    layers = []
    for i in range(n):
        schema = rng.choice(schemas)
        params = {}
        for spec in schema.param_specs:
            if spec.required or rng.random() < 0.6:
                params[spec.name] = _random_param_value(rng, spec)
        layers.append(Layer(id=f"layer_{i}", kind=schema.kind, params=params))

    pairs = [(a.id, b.id) for a in layers for b in layers if a.id != b.id]
    rng.shuffle(pairs)
    links = tuple(Link(a, b) for a, b in pairs[: rng.randint(0, min(len(pairs), 2 * n))])

    hp = Hyperparameters(
        optimizer=Optimizer(
            kind=rng.choice(("sgd", "adam", "rmsprop")),
            learning_rate=round(rng.uniform(1e-5, 0.5), 6),
            extra={"momentum": round(rng.random(), 3)} if rng.random() < 0.4 else {},
        ),
        loss=rng.choice(("categorical_crossentropy", "binary_crossentropy", "mse")),
        batch_size=rng.randint(1, 512),
        epochs=rng.randint(1, 200),
        metrics=tuple(rng.sample(("accuracy", "loss"), rng.randint(0, 2))),
    )
    name = rng.choice(("model", "bigger model", "Ω-net", "cnn-draft-2"))
    return ModelDocument(name=name, layers=tuple(layers), links=links, hyperparameters=hp)
