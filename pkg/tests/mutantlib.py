"""Single-fault mutants built by systematically breaking the task templates.

Every mutant plants exactly one defect and records the rule code plus the
layer ids the validator must flag. Error mutants must produce only the
planted code (warnings are tolerated alongside); warning mutants must
still pass overall.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace

from nlds.capability import Target
from nlds.document import Layer, LayerKind, Link, ModelDocument
from nlds.parsing import serialize_nlds
from nlds.templates import task1, task2, task3


@dataclass(frozen=True)
class Mutant:
    name: str
    text: str
    code: str
    locations: tuple[tuple[str, ...], ...]
    doc: ModelDocument | None = None  # absent for structure-level (text) mutants
    target: Target | None = None
    severity: str = "error"


def set_param(doc: ModelDocument, layer_id: str, name: str, value) -> ModelDocument:
    layer = doc.get_layer(layer_id)
    params = dict(layer.params)
    params[name] = value
    return doc.replace_layer(replace(layer, params=params))


def del_param(doc: ModelDocument, layer_id: str, name: str) -> ModelDocument:
    layer = doc.get_layer(layer_id)
    params = {k: v for k, v in layer.params.items() if k != name}
    return doc.replace_layer(replace(layer, params=params))


def replace_kind(doc: ModelDocument, layer_id: str, kind: LayerKind, params=None) -> ModelDocument:
    return doc.replace_layer(Layer(layer_id, kind, params if params is not None else {}))


def drop_layer(doc: ModelDocument, layer_id: str) -> ModelDocument:
    """Remove a layer and bridge its predecessors to its successors."""
    preds = [l.from_id for l in doc.links if l.to_id == layer_id]
    succs = [l.to_id for l in doc.links if l.from_id == layer_id]
    kept = [l for l in doc.links if layer_id not in l.as_pair()]
    bridged = [Link(p, s) for p in preds for s in succs if not any(k.as_pair() == (p, s) for k in kept)]
    return ModelDocument(
        name=doc.name,
        layers=tuple(l for l in doc.layers if l.id != layer_id),
        links=tuple(kept + bridged),
        hyperparameters=doc.hyperparameters,
    )


def drop_layers(doc: ModelDocument, *layer_ids: str) -> ModelDocument:
    for lid in layer_ids:
        doc = drop_layer(doc, lid)
    return doc


def add_link(doc: ModelDocument, from_id: str, to_id: str) -> ModelDocument:
    return doc.with_links(doc.links + (Link(from_id, to_id),))


def redirect_link(doc: ModelDocument, old: tuple[str, str], new: tuple[str, str]) -> ModelDocument:
    links = tuple(Link(*new) if l.as_pair() == old else l for l in doc.links)
    return doc.with_links(links)


def add_stray_layer(doc: ModelDocument, layer: Layer) -> ModelDocument:
    return doc.with_layers(doc.layers + (layer,))


def _doc_mutant(name, doc, code, *locations, target=None, severity="error") -> Mutant:
    return Mutant(
        name=name,
        text=serialize_nlds(doc),
        doc=doc,
        code=code,
        locations=tuple(locations),
        target=target,
        severity=severity,
    )


def _text_mutant(name, payload: dict, code, *locations) -> Mutant:
    return Mutant(name=name, text=json.dumps(payload), code=code, locations=tuple(locations))


def _payload(doc: ModelDocument) -> dict:
    return json.loads(serialize_nlds(doc))


def build_mutants() -> list[Mutant]:
    t1, t2, t3 = task1(), task2(), task3()
    mutants = [
        # --- missing required parameter (PRM001) ---
        _doc_mutant("t1 conv_1 loses filters", del_param(t1, "conv_1", "filters"), "PRM001", ("conv_1",)),
        _doc_mutant("t2 dense_1 loses units", del_param(t2, "dense_1", "units"), "PRM001", ("dense_1",)),
        _doc_mutant(
            "t3 embedding loses embedding_dim", del_param(t3, "embedding", "embedding_dim"), "PRM001", ("embedding",)
        ),
        _doc_mutant("t3 embedding loses vocab_size", del_param(t3, "embedding", "vocab_size"), "PRM001", ("embedding",)),
        _doc_mutant("t3 lstm_1 loses units", del_param(t3, "lstm_1", "units"), "PRM001", ("lstm_1",)),
        _doc_mutant("t1 input loses shape", del_param(t1, "input", "shape"), "PRM001", ("input",)),
        # --- parameter out of range (PRM002) ---
        _doc_mutant("t1 conv_2 zero filters", set_param(t1, "conv_2", "filters", 0), "PRM002", ("conv_2",)),
        _doc_mutant("t2 dense_1 negative units", set_param(t2, "dense_1", "units", -5), "PRM002", ("dense_1",)),
        _doc_mutant(
            "t2 relu_1 becomes oversaturated dropout",
            replace_kind(t2, "relu_1", LayerKind.DROPOUT, {"rate": 1.5}),
            "PRM002",
            ("relu_1",),
        ),
        _doc_mutant("t1 pool_1 zero window", set_param(t1, "pool_1", "pool_size", (0, 2)), "PRM002", ("pool_1",)),
        _doc_mutant("t1 conv_1 zero stride", set_param(t1, "conv_1", "stride", 0), "PRM002", ("conv_1",)),
        _doc_mutant("t3 input zero-length axis", set_param(t3, "input", "shape", (0,)), "PRM002", ("input",)),
        # --- parameter of the wrong type (PRM003) ---
        _doc_mutant("t1 conv_1 filters as text", set_param(t1, "conv_1", "filters", "ten"), "PRM003", ("conv_1",)),
        _doc_mutant(
            "t3 lstm_2 return_sequences as int", set_param(t3, "lstm_2", "return_sequences", 1), "PRM003", ("lstm_2",)
        ),
        _doc_mutant("t2 conv_3 scalar kernel", set_param(t2, "conv_3", "kernel", 3), "PRM003", ("conv_3",)),
        _doc_mutant("t1 conv_3 boolean padding", set_param(t1, "conv_3", "padding", True), "PRM003", ("conv_3",)),
        # --- illegal adjacency (ADJ001) ---
        _doc_mutant("t1 forgot the flatten", drop_layer(t1, "flatten"), "ADJ001", ("pool_3", "dense_1")),
        _doc_mutant("t2 forgot the flatten", drop_layer(t2, "flatten"), "ADJ001", ("pool_3", "dense_1")),
        _doc_mutant(
            "t2 conv wired straight into dense",
            drop_layers(t2, "relu_5", "pool_3", "flatten"),
            "ADJ001",
            ("conv_5", "dense_1"),
        ),
        _doc_mutant(
            "t3 embedding wired straight into dense",
            drop_layers(t3, "lstm_1", "lstm_2"),
            "ADJ001",
            ("embedding", "dense_1"),
        ),
        # --- arity (ADJ002) ---
        _doc_mutant("t1 pool_2 gets a second input", add_link(t1, "pool_1", "pool_2"), "ADJ002", ("pool_2",)),
        _doc_mutant(
            "t2 lone add layer", replace_kind(t2, "relu_5", LayerKind.ADD), "ADJ002", ("relu_5",)
        ),
        # --- link direction (ADJ003) ---
        _doc_mutant("t1 link into the input", add_link(t1, "softmax", "input"), "ADJ003", ("input",)),
        _doc_mutant("t2 output looped to input", add_link(t2, "output", "input"), "ADJ003", ("output",), ("input",)),
        # --- cycle (FLOW001) ---
        _doc_mutant(
            "t2 conv_3 fed from downstream",
            redirect_link(t2, ("pool_1", "conv_3"), ("pool_2", "conv_3")),
            "FLOW001",
            ("conv_3", "relu_3", "conv_4", "relu_4", "pool_2"),
        ),
        # --- missing Input / Output (FLOW006) ---
        _doc_mutant("t3 input replaced by relu", replace_kind(t3, "input", LayerKind.RELU), "FLOW006", ()),
        _doc_mutant("t1 output replaced by relu", replace_kind(t1, "output", LayerKind.RELU), "FLOW006", ()),
        # --- rank break only visible to shapes (FLOW002) ---
        _doc_mutant("t3 tokens fed straight to lstm", drop_layer(t3, "embedding"), "FLOW002", ("lstm_1",)),
        # --- infeasible extent (FLOW003) ---
        _doc_mutant("t2 pool_3 window exceeds extent", set_param(t2, "pool_3", "pool_size", (9, 9)), "FLOW003", ("pool_3",)),
        _doc_mutant("t1 pool_3 window exceeds extent", set_param(t1, "pool_3", "pool_size", (57, 57)), "FLOW003", ("pool_3",)),
        # --- unreachable layer (FLOW005) ---
        _doc_mutant("t1 stray relu", add_stray_layer(t1, Layer("stray", LayerKind.RELU)), "FLOW005", ("stray",)),
        # --- unsupported and degraded target pairs (PLT001 / PLT002) ---
        _doc_mutant("t3 on the prototxt dialect", t3, "PLT001", ("embedding",), target=Target.CAFFE_PROTOTXT),
        _doc_mutant(
            "t3 sequence output on prototxt",
            set_param(drop_layer(t3, "embedding"), "input", "shape", (100, 32)),
            "PLT002",
            ("lstm_1",),
            target=Target.CAFFE_PROTOTXT,
            severity="warning",
        ),
    ]

    # --- structure-level (level 1) mutants operate on the raw text ---
    p = _payload(t1)
    p["layers"].insert(2, dict(p["layers"][1]))
    mutants.append(_text_mutant("t1 duplicate layer id", p, "NLDS003", ("conv_1",)))

    p = _payload(t2)
    p["links"][3]["to"] = "ghost"
    mutants.append(_text_mutant("t2 dangling link", p, "NLDS004", ()))

    p = _payload(t3)
    p["layers"][2]["kind"] = "GRU"
    mutants.append(_text_mutant("t3 unknown kind", p, "NLDS005", ("lstm_1",)))

    p = _payload(t1)
    p["layers"][1]["params"]["vibes"] = 1
    mutants.append(_text_mutant("t1 unknown parameter", p, "NLDS006", ("conv_1",)))

    return mutants
