"""Output dialects and the per-(layer kind, target) capability matrix.

The matrix is data, not code: tightening what a target supports is a table
edit. Level-5 validation reads it, and the code generators refuse pairs it
rejects.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .document import LayerKind


class Target(str, Enum):
    KERAS = "keras"
    TENSORFLOW = "tensorflow"
    PYTORCH = "pytorch"
    CAFFE_PROTOTXT = "caffe-prototxt"

    def __str__(self) -> str:
        return self.value


TARGET_NAMES = tuple(t.value for t in Target)


def target_from_name(name: str) -> Target | None:
    for target in Target:
        if target.value == name:
            return target
    return None


@dataclass(frozen=True)
class Capability:
    supported: bool = True
    # params the target ignores; setting one to a non-default value is a
    # degradation warning, not an error
    ignored_params: tuple[str, ...] = ()
    note: str = ""


_FULL = Capability()

# Only deviations from full support are listed; lookup falls back to _FULL.
_EXCEPTIONS: dict[tuple[Target, LayerKind], Capability] = {
    (Target.CAFFE_PROTOTXT, LayerKind.EMBEDDING): Capability(
        supported=False,
        note="the prototxt dialect has no embedding lookup layer",
    ),
    (Target.CAFFE_PROTOTXT, LayerKind.LSTM): Capability(
        ignored_params=("return_sequences",),
        note="the prototxt recurrent block always emits its final state",
    ),
}


def capability(kind: LayerKind, target: Target) -> Capability:
    return _EXCEPTIONS.get((target, kind), _FULL)


def supported_targets(kind: LayerKind) -> tuple[Target, ...]:
    return tuple(t for t in Target if capability(kind, t).supported)
