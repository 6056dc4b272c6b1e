"""Command-line access to the full pipeline.

Exit codes: 0 success/valid, 1 validation errors, 2 usage or IO errors.
Data goes to stdout, logs to stderr.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .capability import TARGET_NAMES, Target
from .codegen import EmitOptions, GenerationRefused, generate, write_artifact
from .graph import topological_order
from .parsing import ParseError, parse_nlds, serialize_nlds
from .shapes import format_shape, propagate
from .templates import TEMPLATES
from .validation import validate

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2

_target_option = click.option(
    "--target", "target_name", type=click.Choice(TARGET_NAMES), help="Output dialect."
)


def _read_file(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_USAGE)


@click.group()
def main():
    """Author, validate, inspect, and export NLDS model documents."""


@main.command("validate")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_target_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def validate_cmd(file: Path, target_name: str | None, fmt: str):
    """Run the five-level rule book over FILE."""
    target = Target(target_name) if target_name else None
    report = validate(_read_file(file), target)
    if fmt == "json":
        click.echo(json.dumps(report.to_json(), indent=2))
    else:
        click.echo(report.format_text())
    sys.exit(EXIT_OK if report.passed else EXIT_INVALID)


@main.command("generate")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--target", "target_name", type=click.Choice(TARGET_NAMES), required=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("./out"), show_default=True)
@click.option("--no-training", is_flag=True, help="Emit the model definition only.")
@click.option("--dataset-placeholder", default="dataset", show_default=True)
def generate_cmd(file: Path, target_name: str, out_dir: Path, no_training: bool, dataset_placeholder: str):
    """Emit source code for FILE in the chosen dialect."""
    text = _read_file(file)
    try:
        doc = parse_nlds(text)
    except ParseError as exc:
        for diagnostic in exc.diagnostics:
            click.echo(diagnostic.format_line())
        sys.exit(EXIT_INVALID)
    options = EmitOptions(include_training=not no_training, dataset_placeholder=dataset_placeholder)
    try:
        artifact = generate(doc, Target(target_name), options)
    except GenerationRefused as refused:
        click.echo(refused.report.format_text())
        sys.exit(EXIT_INVALID)
    entrypoint = write_artifact(artifact, out_dir, doc.name)
    click.echo(str(entrypoint))
    sys.exit(EXIT_OK)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--write", "in_place", is_flag=True, help="Rewrite FILE in canonical form.")
def fmt(file: Path, in_place: bool):
    """Canonicalize FILE to stdout (or in place with --write)."""
    try:
        doc = parse_nlds(_read_file(file))
    except ParseError as exc:
        for diagnostic in exc.diagnostics:
            click.echo(diagnostic.format_line())
        sys.exit(EXIT_INVALID)
    canonical = serialize_nlds(doc)
    if in_place:
        file.write_text(canonical, encoding="utf-8")
    else:
        click.echo(canonical, nl=False)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def inspect(file: Path):
    """Per-layer table: id, kind, params, inferred output shape."""
    text = _read_file(file)
    report = validate(text)
    if not report.passed:
        click.echo(report.format_text())
        sys.exit(EXIT_INVALID)
    doc = parse_nlds(text)
    env, _ = propagate(doc)
    rows = []
    for lid in topological_order(doc):
        layer = doc.get_layer(lid)
        params = ", ".join(f"{k}={v}" for k, v in sorted(layer.params.items()))
        rows.append((layer.id, layer.kind.value, params, format_shape(env[lid])))
    widths = [max(len(row[i]) for row in rows + [("id", "kind", "params", "shape")]) for i in range(4)]
    header = ("id", "kind", "params", "shape")
    click.echo("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in rows:
        click.echo("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    sys.exit(EXIT_OK)


@main.command()
@click.option("--template", type=click.Choice(sorted(TEMPLATES)), required=True)
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
def new(template: str, file: Path):
    """Write a bundled starter model to FILE."""
    file.parent.mkdir(parents=True, exist_ok=True)
    file.write_text(serialize_nlds(TEMPLATES[template]()), encoding="utf-8")
    click.echo(str(file))
    sys.exit(EXIT_OK)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True, envvar="NLDS_HOST")
@click.option("--port", default=8080, show_default=True, envvar="NLDS_PORT", type=int)
@click.option(
    "--store-dir",
    default="./models",
    show_default=True,
    envvar="NLDS_STORE_DIR",
    type=click.Path(file_okay=False, path_type=Path),
)
@click.option("--verbosity", default="info", show_default=True, envvar="NLDS_VERBOSITY", type=click.Choice(["debug", "info", "warning"]))
def serve(host: str, port: int, store_dir: Path, verbosity: str):
    """Run the designer service."""
    import uvicorn

    from .service import create_app, default_static_dir

    app = create_app(store_dir=store_dir, static_dir=default_static_dir())
    uvicorn.run(app, host=host, port=port, log_level=verbosity)


if __name__ == "__main__":
    main()
