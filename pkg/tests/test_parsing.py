"""Structure-level parsing and canonical serialization."""
from __future__ import annotations

import json
import random

import pytest
from helpers import minimal_doc, random_document

from nlds.document import LayerKind
from nlds.parsing import ParseError, parse_nlds, serialize_nlds
from nlds.templates import TEMPLATES, task3


def codes_of(exc_info) -> list[str]:
    return [d.code for d in exc_info.value.diagnostics]


def minimal_json() -> dict:
    return json.loads(serialize_nlds(minimal_doc()))


def parse_fail(payload) -> ParseError:
    with pytest.raises(ParseError) as exc_info:
        parse_nlds(payload if isinstance(payload, (str, bytes)) else json.dumps(payload))
    return exc_info.value


def test_minimal_document_parses():
    doc = parse_nlds(serialize_nlds(minimal_doc()))
    assert len(doc.layers) == 4
    assert len(doc.links) == 3
    assert doc.layers[0].kind is LayerKind.INPUT


def test_lstm_layer_example_parses():
    payload = minimal_json()
    payload["layers"] = [{"id": "lstm", "kind": "LSTM", "params": {"units": 64, "return_sequences": False}}]
    payload["links"] = []
    doc = parse_nlds(json.dumps(payload))
    assert doc.layers[0].kind is LayerKind.LSTM
    assert doc.layers[0].params == {"units": 64, "return_sequences": False}


def test_not_json_is_nlds001():
    err = parse_fail("{this is not json")
    assert [d.code for d in err.diagnostics] == ["NLDS001"]


def test_bad_utf8_is_nlds001():
    err = parse_fail(b"\xff\xfe{}")
    assert [d.code for d in err.diagnostics] == ["NLDS001"]


def test_non_object_top_level_is_nlds001():
    err = parse_fail("[1, 2]")
    assert [d.code for d in err.diagnostics] == ["NLDS001"]


@pytest.mark.parametrize("key", ["nlds_version", "name", "layers", "links", "hyperparameters"])
def test_missing_top_level_key_is_nlds002(key):
    payload = minimal_json()
    del payload[key]
    err = parse_fail(payload)
    assert "NLDS002" in [d.code for d in err.diagnostics]
    assert any(d.path == key for d in err.diagnostics)


def test_duplicate_layer_id_is_nlds003():
    payload = minimal_json()
    payload["layers"].insert(2, {"id": "d1", "kind": "ReLU", "params": {}})
    payload["layers"].insert(3, {"id": "d1", "kind": "ReLU", "params": {}})
    err = parse_fail(payload)
    dup = [d for d in err.diagnostics if d.code == "NLDS003"]
    assert len(dup) == 1
    assert dup[0].layer_ids == ("d1",)


def test_dangling_link_is_nlds004():
    payload = minimal_json()
    payload["links"].append({"from": "dense", "to": "ghost"})
    err = parse_fail(payload)
    assert "NLDS004" in [d.code for d in err.diagnostics]


def test_unknown_kind_is_nlds005():
    payload = minimal_json()
    payload["layers"][1]["kind"] = "Conv9D"
    err = parse_fail(payload)
    assert "NLDS005" in [d.code for d in err.diagnostics]


def test_unknown_param_is_nlds006():
    payload = minimal_json()
    payload["layers"][1]["params"]["vibes"] = 3
    err = parse_fail(payload)
    bad = [d for d in err.diagnostics if d.code == "NLDS006"]
    assert bad and bad[0].layer_ids == ("dense",)


def test_empty_layers_is_nlds007():
    payload = minimal_json()
    payload["layers"] = []
    payload["links"] = []
    err = parse_fail(payload)
    assert "NLDS007" in [d.code for d in err.diagnostics]


def test_duplicate_link_is_nlds008():
    payload = minimal_json()
    payload["links"].append(dict(payload["links"][0]))
    err = parse_fail(payload)
    assert "NLDS008" in [d.code for d in err.diagnostics]


def test_self_link_is_nlds009():
    payload = minimal_json()
    payload["links"].append({"from": "dense", "to": "dense"})
    err = parse_fail(payload)
    assert "NLDS009" in [d.code for d in err.diagnostics]


@pytest.mark.parametrize(
    "mutate",
    [
        lambda p: p.update(nlds_version="2.0"),
        lambda p: p.update(name=7),
        lambda p: p["hyperparameters"].update(loss="hinge"),
        lambda p: p["hyperparameters"].update(batch_size=0),
        lambda p: p["hyperparameters"]["optimizer"].update(kind="adagrad"),
        lambda p: p["hyperparameters"]["optimizer"].update(learning_rate=-0.5),
        lambda p: p["hyperparameters"].update(metrics=["f1"]),
        lambda p: p["layers"][1]["params"].update(units={"nested": 1}),
    ],
)
def test_invalid_values_are_nlds010(mutate):
    payload = minimal_json()
    mutate(payload)
    err = parse_fail(payload)
    assert "NLDS010" in [d.code for d in err.diagnostics]


def test_level_one_reports_every_violation():
    payload = minimal_json()
    payload["layers"][1]["kind"] = "Conv9D"
    payload["layers"][2]["params"] = {"bogus": True}
    payload["links"].append({"from": "in", "to": "nowhere"})
    err = parse_fail(payload)
    assert {d.code for d in err.diagnostics} == {"NLDS005", "NLDS006", "NLDS004"}


def test_every_parse_diagnostic_carries_code_and_location():
    payload = minimal_json()
    payload["layers"][1]["kind"] = "Conv9D"
    del payload["name"]
    err = parse_fail(payload)
    for d in err.diagnostics:
        assert d.level == 1
        assert d.code.startswith("NLDS")
        assert d.path or d.layer_ids


def test_serialize_parse_serialize_is_byte_identical():
    for build in TEMPLATES.values():
        text = serialize_nlds(build())
        assert serialize_nlds(parse_nlds(text)) == text


def test_key_order_does_not_matter():
    text = serialize_nlds(minimal_doc())
    payload = json.loads(text)
    scrambled = json.dumps(payload, sort_keys=True)  # different key order, same content
    assert scrambled != text.strip()
    assert serialize_nlds(parse_nlds(scrambled)) == text


def test_task3_fixture_round_trips_with_link_order():
    doc = task3()
    text = serialize_nlds(doc)
    again = parse_nlds(text)
    assert again.links == doc.links
    assert serialize_nlds(again) == text


def test_round_trip_on_randomized_documents():
    rng = random.Random(20260810)
    for _ in range(100):
        doc = random_document(rng)
        text = serialize_nlds(doc)
        assert parse_nlds(text) == doc
        assert serialize_nlds(parse_nlds(text)) == text


def test_metrics_default_to_empty():
    payload = minimal_json()
    del payload["hyperparameters"]["metrics"]
    doc = parse_nlds(json.dumps(payload))
    assert doc.hyperparameters.metrics == ()
