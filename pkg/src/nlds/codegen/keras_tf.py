"""Emitters for the keras and tensorflow dialects.

Both speak the same layer API under different import roots, so one emitter
serves both. Chain models use the sequential idiom; branching models the
functional one.
"""
from __future__ import annotations

from ..capability import Target
from ..document import Hyperparameters, LayerKind
from .common import EmissionPlan, PlannedLayer, fmt_scalar, fmt_shape_tuple


def _roots(target: Target) -> tuple[str, str, str]:
    """(import block, package root, layers root) for the dialect."""
    if target is Target.TENSORFLOW:
        return "import tensorflow as tf", "tf.keras", "tf.keras.layers"
    return "import keras\nfrom keras import layers", "keras", "layers"


_ACTIVATIONS = {
    LayerKind.RELU: "ReLU",
    LayerKind.SOFTMAX: "Softmax",
}
_NAMED_ACTIVATIONS = {
    LayerKind.TANH: "tanh",
    LayerKind.SIGMOID: "sigmoid",
}


def layer_constructor(planned: PlannedLayer, layers_root: str) -> str:
    """The dialect constructor call for one computational layer."""
    kind = planned.kind
    p = planned.params
    name = f'name="{planned.name}"'
    if kind is LayerKind.CONV2D:
        args = (
            f"filters={p['filters']}, kernel_size={fmt_scalar(p['kernel'])}, "
            f"strides={p['stride']}, padding=\"{p['padding']}\""
        )
        return f"{layers_root}.Conv2D({args}, {name})"
    if kind is LayerKind.POOL2D:
        ctor = "MaxPooling2D" if p["mode"] == "max" else "AveragePooling2D"
        args = f"pool_size={fmt_scalar(p['pool_size'])}"
        if "stride" in p:
            args += f", strides={p['stride']}"
        args += f", padding=\"{p['padding']}\""
        return f"{layers_root}.{ctor}({args}, {name})"
    if kind is LayerKind.DENSE:
        return f"{layers_root}.Dense(units={p['units']}, {name})"
    if kind is LayerKind.FLATTEN:
        return f"{layers_root}.Flatten({name})"
    if kind is LayerKind.DROPOUT:
        return f"{layers_root}.Dropout(rate={fmt_scalar(p['rate'])}, {name})"
    if kind is LayerKind.BATCHNORM2D:
        return f"{layers_root}.BatchNormalization(momentum={fmt_scalar(p['momentum'])}, epsilon={fmt_scalar(p['epsilon'])}, {name})"
    if kind in _ACTIVATIONS:
        return f"{layers_root}.{_ACTIVATIONS[kind]}({name})"
    if kind in _NAMED_ACTIVATIONS:
        return f'{layers_root}.Activation("{_NAMED_ACTIVATIONS[kind]}", {name})'
    if kind is LayerKind.EMBEDDING:
        return f"{layers_root}.Embedding(input_dim={p['vocab_size']}, output_dim={p['embedding_dim']}, {name})"
    if kind is LayerKind.LSTM:
        args = f"units={p['units']}"
        if p.get("return_sequences"):
            args += ", return_sequences=True"
        return f"{layers_root}.LSTM({args}, {name})"
    if kind is LayerKind.CONCAT:
        return f"{layers_root}.Concatenate(axis={p['axis']}, {name})"
    if kind is LayerKind.ADD:
        return f"{layers_root}.Add({name})"
    raise ValueError(f"no {layers_root} constructor for {kind}")


def _sequential_body(plan: EmissionPlan, pkg: str, layers_root: str) -> list[str]:
    entries = []
    for planned in plan.order:
        if planned.kind is LayerKind.INPUT:
            entries.append(f'{pkg}.Input(shape={fmt_shape_tuple(planned.output_shape)}, name="{planned.name}")')
        elif planned.kind is not LayerKind.OUTPUT:
            entries.append(layer_constructor(planned, layers_root))
    lines = ["def build_model():", '    """Assemble the model; layers appear in data-flow order."""']
    lines.append(f"    model = {pkg}.Sequential(")
    lines.append("        [")
    for entry in entries:
        lines.append(f"            {entry},")
    lines.append("        ],")
    lines.append(f'        name="{_model_name(plan)}",')
    lines.append("    )")
    lines.append("    return model")
    return lines


def _functional_body(plan: EmissionPlan, pkg: str, layers_root: str) -> list[str]:
    lines = ["def build_model():", '    """Assemble the model graph; every value is named after its layer."""']
    for planned in plan.order:
        if planned.kind is LayerKind.INPUT:
            lines.append(
                f'    {planned.name} = {pkg}.Input(shape={fmt_shape_tuple(planned.output_shape)}, name="{planned.name}")'
            )
        elif planned.kind is LayerKind.OUTPUT:
            continue
        else:
            ctor = layer_constructor(planned, layers_root)
            if len(planned.input_names) == 1:
                feed = planned.input_names[0]
            else:
                feed = "[" + ", ".join(planned.input_names) + "]"
            lines.append(f"    {planned.name} = {ctor}({feed})")
    ins = "[" + ", ".join(p.name for p in plan.inputs()) + "]"
    outs = "[" + ", ".join(plan.output_value_names()) + "]"
    lines.append(f'    model = {pkg}.Model(inputs={ins}, outputs={outs}, name="{_model_name(plan)}")')
    lines.append("    return model")
    return lines


def _model_name(plan: EmissionPlan) -> str:
    return "".join(c if c.isalnum() else "_" for c in plan.doc.name)


_OPTIMIZERS = {"sgd": "SGD", "adam": "Adam", "rmsprop": "RMSprop"}


def training_section(h: Hyperparameters, pkg: str, dataset_placeholder: str) -> list[str]:
    opt_args = [f"learning_rate={fmt_scalar(h.optimizer.learning_rate)}"]
    for key in sorted(h.optimizer.extra):
        opt_args.append(f"{key}={fmt_scalar(h.optimizer.extra[key])}")
    optimizer = f"{pkg}.optimizers.{_OPTIMIZERS[h.optimizer.kind]}({', '.join(opt_args)})"

    lines = [
        "def load_dataset():",
        f'    """Return ((x_train, y_train), (x_val, y_val)) for {dataset_placeholder}."""',
        f'    raise NotImplementedError("wire up {dataset_placeholder} loading for your environment")',
        "",
        "",
        "def train(model):",
        "    model.compile(",
        f"        optimizer={optimizer},",
        f'        loss="{h.loss}",',
    ]
    if h.metrics:
        metrics = ", ".join(f'"{m}"' for m in h.metrics)
        lines.append(f"        metrics=[{metrics}],")
    lines.append("    )")
    lines.append("    (x_train, y_train), (x_val, y_val) = load_dataset()")
    lines.append("    model.fit(")
    lines.append("        x_train,")
    lines.append("        y_train,")
    lines.append(f"        batch_size={h.batch_size},")
    lines.append(f"        epochs={h.epochs},")
    lines.append("        validation_data=(x_val, y_val),")
    lines.append("    )")
    lines.append("    return model")
    return lines


def emit(plan: EmissionPlan, target: Target, include_training: bool, dataset_placeholder: str) -> str:
    imports, pkg, layers_root = _roots(target)
    dialect = "TensorFlow" if target is Target.TENSORFLOW else "Keras"
    head = [
        f'"""{dialect} implementation of the "{plan.doc.name}" model.',
        "",
        "Generated from an NLDS document; layer order follows the validated",
        "data flow. Shapes written here exclude the batch dimension.",
        '"""',
        "",
        imports,
        "",
        "",
    ]
    body = _sequential_body(plan, pkg, layers_root) if plan.chain else _functional_body(plan, pkg, layers_root)

    tail = ["", ""]
    if include_training:
        tail += training_section(plan.doc.hyperparameters, pkg, dataset_placeholder)
        tail += ["", ""]
    tail += ['if __name__ == "__main__":', "    model = build_model()", "    model.summary()"]
    if include_training:
        tail.append("    train(model)")
    return "\n".join(head + body + tail) + "\n"
