"""File-backed model store with optimistic concurrency.

One canonical model file per id plus a sidecar index. Writes go through a
per-id lock and land via rename, so a reader never sees a half-written
file and a restart reloads exactly what was stored.
"""
from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .document import ModelDocument
from .parsing import parse_nlds, serialize_nlds

MODEL_SUFFIX = ".nlds.json"
INDEX_FILE = "index.json"


class UnknownModelError(KeyError):
    pass


class RevisionConflictError(Exception):
    def __init__(self, model_id: str, expected: int, actual: int):
        super().__init__(f"model {model_id}: expected revision {expected}, store has {actual}")
        self.actual = actual


@dataclass(frozen=True)
class StoredModel:
    id: str
    document: ModelDocument
    revision: int
    updated_at: str


class ModelStore:
    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._index_lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    # -- internals ---------------------------------------------------------

    def _lock_for(self, model_id: str) -> threading.Lock:
        with self._index_lock:
            return self._locks.setdefault(model_id, threading.Lock())

    def _index_path(self) -> Path:
        return self.root / INDEX_FILE

    def _model_path(self, model_id: str) -> Path:
        return self.root / f"{model_id}{MODEL_SUFFIX}"

    def _read_index(self) -> dict:
        path = self._index_path()
        if not path.exists():
            return {}
        return json.loads(path.read_text(encoding="utf-8"))

    def _write_atomic(self, path: Path, text: str) -> None:
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(text, encoding="utf-8")
        tmp.replace(path)

    def _write_index(self, index: dict) -> None:
        self._write_atomic(self._index_path(), json.dumps(index, indent=2, sort_keys=True) + "\n")

    def _entry(self, model_id: str) -> dict:
        entry = self._read_index().get(model_id)
        if entry is None:
            raise UnknownModelError(model_id)
        return entry

    @staticmethod
    def _now() -> str:
        return datetime.now(timezone.utc).isoformat(timespec="seconds")

    # -- public API ---------------------------------------------------------

    def create(self, document: ModelDocument) -> StoredModel:
        model_id = uuid.uuid4().hex[:12]
        with self._lock_for(model_id):
            self._write_atomic(self._model_path(model_id), serialize_nlds(document))
            with self._index_lock:
                index = self._read_index()
                index[model_id] = {"revision": 1, "updated_at": self._now(), "name": document.name}
                self._write_index(index)
        return self.get(model_id)

    def get(self, model_id: str) -> StoredModel:
        entry = self._entry(model_id)
        text = self._model_path(model_id).read_text(encoding="utf-8")
        return StoredModel(
            id=model_id,
            document=parse_nlds(text),
            revision=entry["revision"],
            updated_at=entry["updated_at"],
        )

    def canonical_text(self, model_id: str) -> str:
        self._entry(model_id)
        return self._model_path(model_id).read_text(encoding="utf-8")

    def update(self, model_id: str, document: ModelDocument, expected_revision: int) -> StoredModel:
        with self._lock_for(model_id):
            entry = self._entry(model_id)
            if entry["revision"] != expected_revision:
                raise RevisionConflictError(model_id, expected_revision, entry["revision"])
            self._write_atomic(self._model_path(model_id), serialize_nlds(document))
            with self._index_lock:
                index = self._read_index()
                index[model_id] = {
                    "revision": expected_revision + 1,
                    "updated_at": self._now(),
                    "name": document.name,
                }
                self._write_index(index)
        return self.get(model_id)

    def delete(self, model_id: str) -> None:
        with self._lock_for(model_id):
            self._entry(model_id)
            with self._index_lock:
                index = self._read_index()
                index.pop(model_id, None)
                self._write_index(index)
            self._model_path(model_id).unlink(missing_ok=True)

    def list(self) -> list[dict]:
        index = self._read_index()
        return [
            {"id": model_id, **entry}
            for model_id, entry in sorted(index.items())
        ]
