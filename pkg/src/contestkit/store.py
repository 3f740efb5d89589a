"""File-backed document store with atomic writes and content-hash ids.

Documents live as plain JSON files under a workspace root, grouped by kind
(assessments, scenarios, ledgers, configs).  Ids are the SHA-256 of the
canonicalized document, making results cache-friendly and tamper-evident.
Writes go to a temp file in the same directory and are published with
``os.replace`` so a document never half-exists; concurrent writers are
serialized with an exclusive advisory lock per document.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator

from contestkit.errors import InputError, SchemaVersionError, UnknownIdError
from contestkit.jsonio import SCHEMA_VERSION, canonical_json_bytes

WORKSPACE_ENV_VAR = "CONTESTKIT_WORKSPACE"
DEFAULT_WORKSPACE = ".contestkit"
KINDS = ("assessments", "scenarios", "ledgers", "configs")


def workspace_root(explicit: str | os.PathLike | None = None) -> Path:
    """Resolve the workspace root: explicit arg, env var, then default."""
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get(WORKSPACE_ENV_VAR)
    if env:
        return Path(env)
    return Path(DEFAULT_WORKSPACE)


def content_id(document: dict) -> str:
    """Content hash of the canonicalized document (stable across key order)."""
    return hashlib.sha256(canonical_json_bytes(document)).hexdigest()


class WorkspaceStore:
    """Persist versioned JSON documents under a workspace directory."""

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = workspace_root(root)
        for kind in KINDS:
            (self.root / kind).mkdir(parents=True, exist_ok=True)

    # -- paths --

    def _check_kind(self, kind: str) -> None:
        if kind not in KINDS:
            raise InputError(
                f"unknown document kind {kind!r}; expected one of "
                + ", ".join(KINDS),
                "kind",
            )

    def path_for(self, kind: str, document_id: str) -> Path:
        self._check_kind(kind)
        if not document_id or "/" in document_id or document_id.startswith("."):
            raise InputError(f"invalid document id {document_id!r}", "id")
        return self.root / kind / f"{document_id}.json"

    @contextmanager
    def _document_lock(self, kind: str, document_id: str) -> Iterator[None]:
        """Exclusive advisory lock scoped to one document."""
        lock_path = self.root / kind / f".{document_id}.lock"
        with open(lock_path, "w") as handle:
            fcntl.flock(handle, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(handle, fcntl.LOCK_UN)

    # -- operations --

    def save(self, kind: str, document: dict) -> str:
        """Atomically persist a document; returns its content-hash id."""
        self._check_kind(kind)
        if not isinstance(document, dict):
            raise InputError("document must be a JSON object", kind)
        if document.get("schema_version") != SCHEMA_VERSION:
            raise SchemaVersionError(document.get("schema_version"), SCHEMA_VERSION)
        document_id = content_id(document)
        target = self.path_for(kind, document_id)
        with self._document_lock(kind, document_id):
            self._atomic_write(target, document)
        return document_id

    def _atomic_write(self, target: Path, document: dict) -> None:
        data = json.dumps(document, indent=2, ensure_ascii=True, sort_keys=True)
        descriptor, temp_name = tempfile.mkstemp(
            dir=target.parent, prefix=".tmp-", suffix=".json"
        )
        try:
            with os.fdopen(descriptor, "w", encoding="utf-8") as handle:
                handle.write(data + "\n")
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(temp_name, target)
        except BaseException:
            try:
                os.unlink(temp_name)
            except FileNotFoundError:
                pass
            raise

    def load(self, kind: str, document_id: str) -> dict:
        path = self.path_for(kind, document_id)
        try:
            with open(path, encoding="utf-8") as handle:
                document = json.load(handle)
        except FileNotFoundError:
            raise UnknownIdError(kind, document_id) from None
        except json.JSONDecodeError as exc:
            raise InputError(
                f"stored document {document_id!r} is not valid JSON: {exc}", kind
            ) from exc
        if not isinstance(document, dict):
            raise InputError(
                f"stored document {document_id!r} is not a JSON object", kind
            )
        if document.get("schema_version") != SCHEMA_VERSION:
            raise SchemaVersionError(document.get("schema_version"), SCHEMA_VERSION)
        return document

    def exists(self, kind: str, document_id: str) -> bool:
        return self.path_for(kind, document_id).is_file()

    def list_ids(self, kind: str) -> list[str]:
        self._check_kind(kind)
        directory = self.root / kind
        ids = [
            path.stem
            for path in directory.glob("*.json")
            if not path.name.startswith(".")
        ]
        return sorted(ids)

    def delete(self, kind: str, document_id: str) -> None:
        path = self.path_for(kind, document_id)
        with self._document_lock(kind, document_id):
            try:
                path.unlink()
            except FileNotFoundError:
                raise UnknownIdError(kind, document_id) from None
