"""Emitter for the caffe-prototxt dialect.

Definition-level output only: typed layer blocks wired bottom/top, no
training section. Tensors are channels-first with an explicit batch axis,
so a batchless (H, W, C) shape becomes dims (1, C, H, W).
"""
from __future__ import annotations

from ..document import LayerKind
from .common import EmissionPlan, PlannedLayer, same_padding_pair, torch_dim


def _prototxt_dims(shape: tuple[int, ...]) -> list[int]:
    if len(shape) == 3:
        h, w, c = shape
        return [1, c, h, w]
    return [1, *shape]


_PLAIN_TYPES = {
    LayerKind.FLATTEN: "Flatten",
    LayerKind.RELU: "ReLU",
    LayerKind.TANH: "TanH",
    LayerKind.SIGMOID: "Sigmoid",
    LayerKind.SOFTMAX: "Softmax",
}


def _param_block(planned: PlannedLayer) -> list[str]:
    kind = planned.kind
    p = planned.params
    if kind is LayerKind.INPUT:
        dims = " ".join(f"dim: {d}" for d in _prototxt_dims(planned.output_shape))
        return ["  input_param {", f"    shape {{ {dims} }}", "  }"]
    if kind is LayerKind.CONV2D:
        kh, kw = p["kernel"]  # type: ignore[misc]
        lines = [
            "  convolution_param {",
            f"    num_output: {p['filters']}",
            f"    kernel_h: {kh}",
            f"    kernel_w: {kw}",
            f"    stride: {p['stride']}",
        ]
        if p["padding"] == "same":
            ph, pw = same_padding_pair((kh, kw))
            lines += [f"    pad_h: {ph}", f"    pad_w: {pw}"]
        lines.append("  }")
        return lines
    if kind is LayerKind.POOL2D:
        ph, pw = p["pool_size"]  # type: ignore[misc]
        sh, sw = (p["stride"], p["stride"]) if "stride" in p else (ph, pw)
        lines = [
            "  pooling_param {",
            f"    pool: {'MAX' if p['mode'] == 'max' else 'AVE'}",
            f"    kernel_h: {ph}",
            f"    kernel_w: {pw}",
            f"    stride_h: {sh}",
            f"    stride_w: {sw}",
        ]
        if p["padding"] == "same":
            pad_h, pad_w = same_padding_pair((ph, pw))
            lines += [f"    pad_h: {pad_h}", f"    pad_w: {pad_w}"]
        lines.append("  }")
        return lines
    if kind is LayerKind.DENSE:
        return ["  inner_product_param {", f"    num_output: {p['units']}", "  }"]
    if kind is LayerKind.DROPOUT:
        return ["  dropout_param {", f"    dropout_ratio: {p['rate']}", "  }"]
    if kind is LayerKind.BATCHNORM2D:
        return [
            "  batch_norm_param {",
            f"    moving_average_fraction: {p['momentum']}",
            f"    eps: {p['epsilon']}",
            "  }",
        ]
    if kind is LayerKind.LSTM:
        return ["  recurrent_param {", f"    num_output: {p['units']}", "  }"]
    if kind is LayerKind.CONCAT:
        axis = torch_dim(int(p["axis"]), len(planned.input_shapes[0]))  # type: ignore[arg-type]
        return ["  concat_param {", f"    axis: {axis}", "  }"]
    if kind is LayerKind.ADD:
        return ["  eltwise_param {", "    operation: SUM", "  }"]
    return []


def _layer_type(planned: PlannedLayer) -> str:
    kind = planned.kind
    if kind in _PLAIN_TYPES:
        return _PLAIN_TYPES[kind]
    return {
        LayerKind.INPUT: "Input",
        LayerKind.CONV2D: "Convolution",
        LayerKind.POOL2D: "Pooling",
        LayerKind.DENSE: "InnerProduct",
        LayerKind.DROPOUT: "Dropout",
        LayerKind.BATCHNORM2D: "BatchNorm",
        LayerKind.LSTM: "LSTM",
        LayerKind.CONCAT: "Concat",
        LayerKind.ADD: "Eltwise",
    }[kind]


def emit(plan: EmissionPlan) -> str:
    name = "".join(c if c.isalnum() else "_" for c in plan.doc.name)
    blocks = [f'name: "{name}"']
    for planned in plan.order:
        if planned.kind is LayerKind.OUTPUT:
            continue  # the marker's input already is the network's final top
        lines = ["layer {", f'  name: "{planned.name}"', f'  type: "{_layer_type(planned)}"']
        for bottom in planned.input_names:
            lines.append(f'  bottom: "{bottom}"')
        lines.append(f'  top: "{planned.name}"')
        lines += _param_block(planned)
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n".join(blocks) + "\n"
