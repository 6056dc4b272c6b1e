"""Emitter for the pytorch dialect.

Models are emitted as an nn.Module subclass: modules declared in __init__
in data-flow order, wired in forward. Rank-3 data is channels-first here,
so a batchless (H, W, C) shape corresponds to a (N, C, H, W) tensor; the
in_channels / in_features arguments come from the propagated input shapes.
"""
from __future__ import annotations

from ..document import Hyperparameters, LayerKind
from .common import EmissionPlan, PlannedLayer, class_name_for, fmt_scalar, same_padding_pair, torch_dim

_SIMPLE_ACTIVATIONS = {
    LayerKind.RELU: "nn.ReLU()",
    LayerKind.TANH: "nn.Tanh()",
    LayerKind.SIGMOID: "nn.Sigmoid()",
}


def module_constructor(planned: PlannedLayer) -> str | None:
    """The nn constructor for one layer; None for kinds wired functionally."""
    kind = planned.kind
    p = planned.params
    if kind is LayerKind.CONV2D:
        in_channels = planned.input_shapes[0][2]
        kh, kw = p["kernel"]  # type: ignore[misc]
        stride = p["stride"]
        if p["padding"] == "valid":
            padding = "0"
        elif stride == 1:
            padding = '"same"'
        else:
            padding = fmt_scalar(same_padding_pair((kh, kw)))
        return (
            f"nn.Conv2d(in_channels={in_channels}, out_channels={p['filters']}, "
            f"kernel_size=({kh}, {kw}), stride={stride}, padding={padding})"
        )
    if kind is LayerKind.POOL2D:
        ctor = "nn.MaxPool2d" if p["mode"] == "max" else "nn.AvgPool2d"
        args = f"kernel_size={fmt_scalar(p['pool_size'])}"
        if "stride" in p:
            args += f", stride={p['stride']}"
        if p["padding"] == "same":
            args += ", ceil_mode=True"
        return f"{ctor}({args})"
    if kind is LayerKind.DENSE:
        return f"nn.Linear(in_features={planned.input_shapes[0][0]}, out_features={p['units']})"
    if kind is LayerKind.FLATTEN:
        return "nn.Flatten()"
    if kind is LayerKind.DROPOUT:
        return f"nn.Dropout(p={fmt_scalar(p['rate'])})"
    if kind is LayerKind.BATCHNORM2D:
        # torch's momentum weights the new observation, complementing the
        # running-average convention used in the document
        update = round(1.0 - float(p["momentum"]), 6)  # type: ignore[arg-type]
        return f"nn.BatchNorm2d(num_features={planned.input_shapes[0][2]}, eps={fmt_scalar(p['epsilon'])}, momentum={update})"
    if kind in _SIMPLE_ACTIVATIONS:
        return _SIMPLE_ACTIVATIONS[kind]
    if kind is LayerKind.SOFTMAX:
        dim = 1 if len(planned.input_shapes[0]) == 3 else -1
        return f"nn.Softmax(dim={dim})"
    if kind is LayerKind.EMBEDDING:
        return f"nn.Embedding(num_embeddings={p['vocab_size']}, embedding_dim={p['embedding_dim']})"
    if kind is LayerKind.LSTM:
        in_features = planned.input_shapes[0][1]
        return f"nn.LSTM(input_size={in_features}, hidden_size={p['units']}, batch_first=True)"
    if kind in (LayerKind.CONCAT, LayerKind.ADD, LayerKind.INPUT, LayerKind.OUTPUT):
        return None
    raise ValueError(f"no torch constructor for {kind}")


def _forward_lines(plan: EmissionPlan) -> list[str]:
    lines = []
    for planned in plan.order:
        kind = planned.kind
        var = f"x_{planned.name}"
        feeds = [f"x_{n}" for n in planned.input_names]
        if kind in (LayerKind.INPUT, LayerKind.OUTPUT):
            continue
        if kind is LayerKind.LSTM:
            lines.append(f"        {var}, _ = self.{planned.name}({feeds[0]})")
            if not planned.params.get("return_sequences"):
                lines.append(f"        {var} = {var}[:, -1, :]")
        elif kind is LayerKind.CONCAT:
            dim = torch_dim(int(planned.params["axis"]), len(planned.input_shapes[0]))
            lines.append(f"        {var} = torch.cat([{', '.join(feeds)}], dim={dim})")
        elif kind is LayerKind.ADD:
            expr = f"torch.add({feeds[0]}, {feeds[1]})"
            for extra in feeds[2:]:
                expr = f"torch.add({expr}, {extra})"
            lines.append(f"        {var} = {expr}")
        else:
            lines.append(f"        {var} = self.{planned.name}({feeds[0]})")
    return lines


def _training_lines(h: Hyperparameters, dataset_placeholder: str) -> list[str]:
    optimizers = {"sgd": "SGD", "adam": "Adam", "rmsprop": "RMSprop"}
    losses = {
        "categorical_crossentropy": "nn.CrossEntropyLoss()",
        "binary_crossentropy": "nn.BCELoss()",
        "mse": "nn.MSELoss()",
    }
    opt_args = [f"lr={fmt_scalar(h.optimizer.learning_rate)}"]
    for key in sorted(h.optimizer.extra):
        opt_args.append(f"{key}={fmt_scalar(h.optimizer.extra[key])}")
    track_accuracy = "accuracy" in h.metrics

    lines = [
        "def load_dataset():",
        f'    """Return a torch Dataset of (input, target) pairs for {dataset_placeholder}."""',
        f'    raise NotImplementedError("wire up {dataset_placeholder} loading for your environment")',
        "",
        "",
        "def train(model):",
        f"    optimizer = torch.optim.{optimizers[h.optimizer.kind]}(model.parameters(), {', '.join(opt_args)})",
        f"    criterion = {losses[h.loss]}",
        "    loader = torch.utils.data.DataLoader(",
        f"        load_dataset(), batch_size={h.batch_size}, shuffle=True",
        "    )",
        "    model.train()",
        f"    for epoch in range({h.epochs}):",
        "        total_loss = 0.0",
        "        seen = 0",
    ]
    if track_accuracy:
        lines.append("        correct = 0")
    lines += [
        "        for inputs, targets in loader:",
        "            optimizer.zero_grad()",
        "            outputs = model(inputs)",
        "            loss = criterion(outputs, targets)",
        "            loss.backward()",
        "            optimizer.step()",
        "            total_loss += loss.item() * inputs.size(0)",
        "            seen += inputs.size(0)",
    ]
    if track_accuracy:
        lines.append("            correct += (outputs.argmax(dim=-1) == targets).sum().item()")
    report = 'f"epoch {epoch + 1}: loss={total_loss / seen:.4f}'
    if track_accuracy:
        report += " accuracy={correct / seen:.4f}"
    report += '"'
    lines.append(f"        print({report})")
    lines.append("    return model")
    return lines


def emit(plan: EmissionPlan, include_training: bool, dataset_placeholder: str) -> str:
    cls = class_name_for(plan.doc.name)
    head = [
        f'"""PyTorch implementation of the "{plan.doc.name}" model.',
        "",
        "Generated from an NLDS document; layer order follows the validated",
        "data flow. Image tensors are channels-first (N, C, H, W).",
        '"""',
        "",
        "import torch",
        "from torch import nn",
        "",
        "",
        f"class {cls}(nn.Module):",
        '    """Modules are declared and applied in data-flow order."""',
        "",
        "    def __init__(self):",
        "        super().__init__()",
    ]
    for planned in plan.order:
        ctor = module_constructor(planned)
        if ctor is not None:
            head.append(f"        self.{planned.name} = {ctor}")

    args = ", ".join(f"x_{p.name}" for p in plan.inputs())
    head.append("")
    head.append(f"    def forward(self, {args}):")
    head += _forward_lines(plan)
    outs = ", ".join(f"x_{name}" for name in plan.output_value_names())
    head.append(f"        return {outs}")

    tail = ["", "", "def build_model():", f"    return {cls}()", "", ""]
    if include_training:
        tail += _training_lines(plan.doc.hyperparameters, dataset_placeholder)
        tail += ["", ""]
    tail += ['if __name__ == "__main__":', "    model = build_model()", "    print(model)"]
    if include_training:
        tail.append("    train(model)")
    return "\n".join(head + tail) + "\n"
