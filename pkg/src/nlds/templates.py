"""Bundled starter models: three image/text classifiers of fixed depth.

Each template is a clean document that passes every validation level.
Depth counts computational layers; Input/Output markers are extra.
task1: 13-layer CNN (Conv2D, Pool2D, TanH, ReLU, Flatten, Dense, Softmax).
task2: 16-layer CNN (same set minus TanH).
task3: 6-layer RNN (Embedding, LSTM, Dense, Softmax).
"""
from __future__ import annotations

from .document import Hyperparameters, Layer, LayerKind, Link, ModelDocument, Optimizer


def _chain(name: str, layers: list[Layer], hyperparameters: Hyperparameters) -> ModelDocument:
    links = tuple(Link(a.id, b.id) for a, b in zip(layers, layers[1:]))
    return ModelDocument(name=name, layers=tuple(layers), links=links, hyperparameters=hyperparameters)


def task1() -> ModelDocument:
    """13-layer CNN for 1000-way image classification on 224x224 RGB inputs."""
    k = LayerKind
    layers = [
        Layer("input", k.INPUT, {"shape": (224, 224, 3)}),
        Layer("conv_1", k.CONV2D, {"filters": 32, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("relu_1", k.RELU),
        Layer("pool_1", k.POOL2D, {"pool_size": (2, 2), "mode": "max", "padding": "valid"}),
        Layer("conv_2", k.CONV2D, {"filters": 64, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("tanh_1", k.TANH),
        Layer("pool_2", k.POOL2D, {"pool_size": (2, 2), "mode": "max", "padding": "valid"}),
        Layer("conv_3", k.CONV2D, {"filters": 128, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("relu_2", k.RELU),
        Layer("pool_3", k.POOL2D, {"pool_size": (2, 2), "mode": "max", "padding": "valid"}),
        Layer("flatten", k.FLATTEN),
        Layer("dense_1", k.DENSE, {"units": 256}),
        Layer("dense_2", k.DENSE, {"units": 1000}),
        Layer("softmax", k.SOFTMAX),
        Layer("output", k.OUTPUT),
    ]
    hp = Hyperparameters(
        optimizer=Optimizer(kind="sgd", learning_rate=0.01, extra={"momentum": 0.9}),
        loss="categorical_crossentropy",
        batch_size=32,
        epochs=10,
        metrics=("accuracy",),
    )
    return _chain("task1-cnn", layers, hp)


def task2() -> ModelDocument:
    """16-layer CNN for 10-way image classification on 32x32 RGB inputs."""
    k = LayerKind
    layers = [
        Layer("input", k.INPUT, {"shape": (32, 32, 3)}),
        Layer("conv_1", k.CONV2D, {"filters": 32, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("relu_1", k.RELU),
        Layer("conv_2", k.CONV2D, {"filters": 32, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("relu_2", k.RELU),
        Layer("pool_1", k.POOL2D, {"pool_size": (2, 2), "mode": "max", "padding": "valid"}),
        Layer("conv_3", k.CONV2D, {"filters": 64, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("relu_3", k.RELU),
        Layer("conv_4", k.CONV2D, {"filters": 64, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("relu_4", k.RELU),
        Layer("pool_2", k.POOL2D, {"pool_size": (2, 2), "mode": "max", "padding": "valid"}),
        Layer("conv_5", k.CONV2D, {"filters": 128, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("relu_5", k.RELU),
        Layer("pool_3", k.POOL2D, {"pool_size": (2, 2), "mode": "max", "padding": "valid"}),
        Layer("flatten", k.FLATTEN),
        Layer("dense_1", k.DENSE, {"units": 10}),
        Layer("softmax", k.SOFTMAX),
        Layer("output", k.OUTPUT),
    ]
    hp = Hyperparameters(
        optimizer=Optimizer(kind="adam", learning_rate=0.001),
        loss="categorical_crossentropy",
        batch_size=128,
        epochs=20,
        metrics=("accuracy",),
    )
    return _chain("task2-cnn", layers, hp)


def task3() -> ModelDocument:
    """6-layer RNN for 10-way text classification over 100-token sequences."""
    k = LayerKind
    layers = [
        Layer("input", k.INPUT, {"shape": (100,)}),
        Layer("embedding", k.EMBEDDING, {"vocab_size": 10000, "embedding_dim": 32}),
        Layer("lstm_1", k.LSTM, {"units": 64, "return_sequences": True}),
        Layer("lstm_2", k.LSTM, {"units": 32, "return_sequences": False}),
        Layer("dense_1", k.DENSE, {"units": 64}),
        Layer("dense_2", k.DENSE, {"units": 10}),
        Layer("softmax", k.SOFTMAX),
        Layer("output", k.OUTPUT),
    ]
    hp = Hyperparameters(
        optimizer=Optimizer(kind="rmsprop", learning_rate=0.001),
        loss="categorical_crossentropy",
        batch_size=64,
        epochs=5,
        metrics=("accuracy",),
    )
    return _chain("task3-rnn", layers, hp)


TEMPLATES = {"task1": task1, "task2": task2, "task3": task3}
