"""Emission: determinism, golden files, layer fidelity, reference ordering."""
from __future__ import annotations

import re

import pytest
from helpers import chain_doc, doc_with_links

from nlds.capability import Target
from nlds.codegen import EmitOptions, GenerationRefused, emit_layer, generate
from nlds.document import Layer, LayerKind
from nlds.templates import TEMPLATES, task1, task3

ALL_TARGETS = list(Target)


def supported(fixture_name: str, target: Target) -> bool:
    return not (fixture_name == "task3" and target is Target.CAFFE_PROTOTXT)


def fixture_target_pairs():
    return [
        pytest.param(name, target, id=f"{name}-{target.value}")
        for name in TEMPLATES
        for target in ALL_TARGETS
        if supported(name, target)
    ]


@pytest.mark.parametrize("name,target", fixture_target_pairs())
def test_generation_is_deterministic(name, target):
    doc = TEMPLATES[name]()
    first = generate(doc, target)
    second = generate(doc, target)
    assert first.files == second.files
    assert first.entrypoint == second.entrypoint


@pytest.mark.parametrize("name,target", fixture_target_pairs())
def test_output_matches_golden(name, target, golden_check):
    artifact = generate(TEMPLATES[name](), target)
    assert len(artifact.files) >= 1
    golden_check(name, target.value, artifact.entrypoint, artifact.entry_content())


def count_constructs(content: str, target: Target) -> int:
    if target is Target.KERAS:
        return len(re.findall(r"(?<!tf\.keras\.)\blayers\.\w+\(", content))
    if target is Target.TENSORFLOW:
        return len(re.findall(r"tf\.keras\.layers\.\w+\(", content))
    if target is Target.PYTORCH:
        modules = len(re.findall(r"^\s+self\.\w+ = nn\.", content, re.MULTILINE))
        merges = len(re.findall(r"^\s+x_\w+ = torch\.(?:cat|add)", content, re.MULTILINE))
        return modules + merges
    blocks = re.findall(r'^layer \{\n  name: "[^"]+"\n  type: "(\w+)"', content, re.MULTILINE)
    return sum(1 for t in blocks if t != "Input")


@pytest.mark.parametrize("name,target", fixture_target_pairs())
def test_layer_construct_count_matches_document(name, target):
    doc = TEMPLATES[name]()
    computational = sum(1 for l in doc.layers if l.kind not in (LayerKind.INPUT, LayerKind.OUTPUT))
    content = generate(doc, target).entry_content()
    assert count_constructs(content, target) == computational


def branching_doc():
    """Two convolution branches merged by Add, then a Concat with a skip."""
    layers = [
        Layer("in", LayerKind.INPUT, {"shape": (16, 16, 3)}),
        Layer("conv_a", LayerKind.CONV2D, {"filters": 8, "kernel": (3, 3), "stride": 1, "padding": "same"}),
        Layer("conv_b", LayerKind.CONV2D, {"filters": 8, "kernel": (5, 5), "stride": 1, "padding": "same"}),
        Layer("merge", LayerKind.ADD),
        Layer("skip", LayerKind.CONCAT, {"axis": -1}),
        Layer("bn", LayerKind.BATCHNORM2D),
        Layer("flatten", LayerKind.FLATTEN),
        Layer("dense", LayerKind.DENSE, {"units": 10}),
        Layer("softmax", LayerKind.SOFTMAX),
        Layer("out", LayerKind.OUTPUT),
    ]
    links = [
        ("in", "conv_a"),
        ("in", "conv_b"),
        ("conv_a", "merge"),
        ("conv_b", "merge"),
        ("merge", "skip"),
        ("conv_a", "skip"),
        ("skip", "bn"),
        ("bn", "flatten"),
        ("flatten", "dense"),
        ("dense", "softmax"),
        ("softmax", "out"),
    ]
    return doc_with_links(layers, links, name="branchy")


def definitions_and_uses(content: str, target: Target) -> list[tuple[str, list[str]]]:
    """Per emitted statement: (defined name, names it references)."""
    out: list[tuple[str, list[str]]] = []
    if target in (Target.KERAS, Target.TENSORFLOW):
        for line in content.splitlines():
            m = re.match(r"\s+(\w+) = (?:layers|keras|tf\.keras)", line)
            if not m or " = keras.Model(" in line or " = tf.keras.Model(" in line:
                continue
            call = re.search(r"\)\((.+)\)\s*$", line)
            uses = re.findall(r"\w+", call.group(1)) if call else []
            out.append((m.group(1), uses))
    elif target is Target.PYTORCH:
        in_forward = False
        for line in content.splitlines():
            if line.strip().startswith("def forward"):
                in_forward = True
                for arg in re.findall(r"x_\w+", line):
                    out.append((arg, []))
                continue
            if in_forward:
                if line.strip().startswith("return"):
                    break
                m = re.match(r"\s+(x_\w+)(?:, _)? = (.+)$", line)
                if m:
                    uses = [u for u in re.findall(r"x_\w+", m.group(2)) if u != m.group(1)]
                    out.append((m.group(1), uses))
    else:
        for block in re.findall(r"^layer \{\n(.*?)^\}", content, re.MULTILINE | re.DOTALL):
            top = re.search(r'top: "([^"]+)"', block)
            bottoms = re.findall(r'bottom: "([^"]+)"', block)
            out.append((top.group(1), bottoms))
    return out


@pytest.mark.parametrize("target", ALL_TARGETS, ids=lambda t: t.value)
def test_no_forward_references(target):
    content = generate(branching_doc(), target).entry_content()
    defined: set[str] = set()
    statements = definitions_and_uses(content, target)
    assert statements, "reference scan found nothing to check"
    for name, uses in statements:
        for used in uses:
            assert used in defined, f"{name} references {used} before its definition"
        defined.add(name)


def test_chain_models_use_the_sequential_idiom():
    content = generate(task1(), Target.KERAS).entry_content()
    assert "keras.Sequential(" in content
    assert "keras.Model(" not in content
    names = re.findall(r'name="(\w+)"', content)[:-1]  # the last one names the model itself
    assert names == [l.id for l in task1().layers if l.kind is not LayerKind.OUTPUT]


def test_branching_models_use_the_functional_idiom():
    content = generate(branching_doc(), Target.KERAS).entry_content()
    assert "keras.Model(" in content
    assert "keras.Sequential(" not in content


def test_training_skeleton_binds_all_hyperparameters():
    doc = task3()
    h = doc.hyperparameters
    for target in (Target.KERAS, Target.TENSORFLOW, Target.PYTORCH):
        content = generate(doc, target).entry_content()
        assert str(h.batch_size) in content
        assert str(h.epochs) in content
        assert str(h.optimizer.learning_rate) in content
        assert ("RMSprop" if target is not Target.PYTORCH else "torch.optim.RMSprop") in content
        assert ("categorical_crossentropy" in content) or ("CrossEntropyLoss" in content)
        assert "accuracy" in content


def test_no_training_omits_every_hyperparameter_value():
    doc = task3()
    content = generate(doc, Target.KERAS, EmitOptions(include_training=False)).entry_content()
    assert "compile" not in content and "fit" not in content
    for needle in ("0.001", "batch_size=64", "epochs=5", "rmsprop", "RMSprop", "crossentropy"):
        assert needle not in content


def test_empty_metrics_omit_metric_reporting():
    from dataclasses import replace

    doc = task3()
    doc = replace(doc, hyperparameters=replace(doc.hyperparameters, metrics=()))
    keras_content = generate(doc, Target.KERAS).entry_content()
    assert "metrics=" not in keras_content
    torch_content = generate(doc, Target.PYTORCH).entry_content()
    assert "accuracy" not in torch_content


def test_caffe_never_contains_training():
    content = generate(task1(), Target.CAFFE_PROTOTXT).entry_content()
    assert "epoch" not in content and "loss" not in content.lower()
    assert content.startswith('name: "task1_cnn"')
    assert 'type: "Softmax"' in content


def test_generate_refuses_invalid_documents():
    broken = chain_doc(
        [
            Layer("in", LayerKind.INPUT, {"shape": (8, 8, 3)}),
            Layer("conv", LayerKind.CONV2D, {}),
            Layer("out", LayerKind.OUTPUT),
        ]
    )
    with pytest.raises(GenerationRefused) as exc_info:
        generate(broken, Target.KERAS)
    assert "PRM001" in exc_info.value.report.codes()


def test_generate_refuses_unsupported_platform_pairs():
    with pytest.raises(GenerationRefused) as exc_info:
        generate(task3(), Target.CAFFE_PROTOTXT)
    assert "PLT001" in exc_info.value.report.codes()


def test_emit_layer_flatten_consumes_its_input():
    fragment, name = emit_layer(
        LayerKind.FLATTEN, {}, ["x5"], Target.KERAS, input_shapes=[(4, 4, 2)], layer_id="Flatten 1"
    )
    assert name == "flatten_1"
    assert fragment == "flatten_1 = layers.Flatten(name=\"flatten_1\")(x5)"


def test_emit_layer_conv_carries_input_channels_on_torch():
    fragment, _ = emit_layer(
        LayerKind.CONV2D,
        {"filters": 16, "kernel": (3, 3)},
        ["x0"],
        Target.PYTORCH,
        input_shapes=[(32, 32, 3)],
        layer_id="conv",
    )
    assert "in_channels=3" in fragment and "out_channels=16" in fragment


def test_emit_layer_softmax_prototxt_block():
    fragment, name = emit_layer(
        LayerKind.SOFTMAX, {}, ["dense_1"], Target.CAFFE_PROTOTXT, input_shapes=[(10,)], layer_id="softmax"
    )
    assert 'type: "Softmax"' in fragment
    assert f'top: "{name}"' in fragment


def test_sanitized_names_avoid_collisions_and_keywords():
    doc = chain_doc(
        [
            Layer("in", LayerKind.INPUT, {"shape": (8,)}),
            Layer("class", LayerKind.DENSE, {"units": 4}),
            Layer("Class", LayerKind.RELU),
            Layer("out", LayerKind.OUTPUT),
        ]
    )
    content = generate(doc, Target.PYTORCH).entry_content()
    assert "self.class_ = " in content
    assert "self.class__2 = " in content
