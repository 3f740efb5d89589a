"""Workspace store: content-hash ids, atomic writes, schema gating."""

from __future__ import annotations

import hashlib
import json
import os
import random
import threading

import pytest

from contestkit.errors import InputError, SchemaVersionError, UnknownIdError
from contestkit.jsonio import canonical_json_bytes
from contestkit.store import (
    KINDS,
    WORKSPACE_ENV_VAR,
    WorkspaceStore,
    content_id,
    workspace_root,
)


def doc(n: int = 0) -> dict:
    return {"schema_version": "1", "payload": {"value": n, "name": f"doc-{n}"}}


class TestContentIds:
    def test_id_is_sha256_of_canonical_json(self):
        document = doc(7)
        expected = hashlib.sha256(canonical_json_bytes(document)).hexdigest()
        assert content_id(document) == expected

    def test_id_ignores_key_order(self):
        a = {"schema_version": "1", "x": 1, "y": 2}
        b = {"y": 2, "x": 1, "schema_version": "1"}
        assert content_id(a) == content_id(b)

    def test_different_content_different_id(self):
        assert content_id(doc(1)) != content_id(doc(2))


class TestSaveLoad:
    def test_round_trip(self, workspace):
        document_id = workspace.save("assessments", doc(1))
        assert workspace.load("assessments", document_id) == doc(1)

    def test_save_returns_content_id(self, workspace):
        assert workspace.save("ledgers", doc(3)) == content_id(doc(3))

    def test_saving_same_content_is_idempotent(self, workspace):
        first = workspace.save("scenarios", doc(4))
        second = workspace.save("scenarios", doc(4))
        assert first == second
        assert workspace.list_ids("scenarios") == [first]

    def test_unknown_id_raises(self, workspace):
        with pytest.raises(UnknownIdError):
            workspace.load("assessments", "0" * 64)

    def test_unknown_kind_rejected(self, workspace):
        with pytest.raises(InputError):
            workspace.save("notes", doc(0))
        with pytest.raises(InputError):
            workspace.load("notes", "x")

    def test_path_traversal_id_rejected(self, workspace):
        with pytest.raises(InputError):
            workspace.load("assessments", "../../etc/passwd")
        with pytest.raises(InputError):
            workspace.load("assessments", ".hidden")

    def test_save_requires_schema_version(self, workspace):
        with pytest.raises(SchemaVersionError):
            workspace.save("assessments", {"payload": 1})

    def test_load_rejects_foreign_schema_version(self, workspace):
        rogue = {"schema_version": "42", "payload": 1}
        path = workspace.root / "assessments" / "rogue.json"
        path.write_text(json.dumps(rogue), encoding="utf-8")
        with pytest.raises(SchemaVersionError) as excinfo:
            workspace.load("assessments", "rogue")
        assert "migrate" in str(excinfo.value)

    def test_load_rejects_corrupt_json_with_diagnostic(self, workspace):
        path = workspace.root / "assessments" / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(InputError):
            workspace.load("assessments", "broken")

    def test_delete(self, workspace):
        document_id = workspace.save("configs", doc(9))
        workspace.delete("configs", document_id)
        assert not workspace.exists("configs", document_id)
        with pytest.raises(UnknownIdError):
            workspace.delete("configs", document_id)

    def test_list_ids_sorted_and_ignores_scratch_files(self, workspace):
        ids = sorted(workspace.save("assessments", doc(n)) for n in range(3))
        (workspace.root / "assessments" / ".tmp-leftover.json").write_text("junk")
        (workspace.root / "assessments" / ".abc.lock").write_text("")
        assert workspace.list_ids("assessments") == ids

    def test_all_kinds_have_directories(self, workspace):
        for kind in KINDS:
            assert (workspace.root / kind).is_dir()


class TestWorkspaceRoot:
    def test_explicit_beats_env(self, monkeypatch, tmp_path):
        monkeypatch.setenv(WORKSPACE_ENV_VAR, str(tmp_path / "env"))
        assert workspace_root(tmp_path / "explicit").name == "explicit"

    def test_env_var_used_when_no_explicit(self, monkeypatch, tmp_path):
        monkeypatch.setenv(WORKSPACE_ENV_VAR, str(tmp_path / "env"))
        assert workspace_root() == tmp_path / "env"

    def test_default_when_nothing_set(self, monkeypatch):
        monkeypatch.delenv(WORKSPACE_ENV_VAR, raising=False)
        assert str(workspace_root()) == ".contestkit"


class TestAtomicity:
    """A save interrupted at any point must not corrupt the workspace.

    The write path is write-temp, fsync, then an atomic rename publish;
    these trials kill the save at each stage and check invariants: existing
    documents still load, and the interrupted document either fully exists
    or does not exist at all.
    """

    def _check_workspace_sound(self, workspace, expected: dict[str, dict]):
        listed = workspace.list_ids("assessments")
        assert sorted(listed) == sorted(expected)
        for document_id, original in expected.items():
            assert workspace.load("assessments", document_id) == original

    def test_failure_during_fsync_leaves_target_absent(self, workspace, monkeypatch):
        safe_id = workspace.save("assessments", doc(0))

        def boom(fd):
            raise OSError("simulated power loss")

        monkeypatch.setattr("contestkit.store.os.fsync", boom)
        with pytest.raises(OSError):
            workspace.save("assessments", doc(1))
        monkeypatch.undo()
        self._check_workspace_sound(workspace, {safe_id: doc(0)})

    def test_failure_during_publish_leaves_target_absent(self, workspace, monkeypatch):
        safe_id = workspace.save("assessments", doc(0))

        def boom(src, dst):
            raise OSError("simulated kill before rename")

        monkeypatch.setattr("contestkit.store.os.replace", boom)
        with pytest.raises(OSError):
            workspace.save("assessments", doc(2))
        monkeypatch.undo()
        self._check_workspace_sound(workspace, {safe_id: doc(0)})

    def test_100_randomized_fault_injection_trials(self, workspace, monkeypatch):
        rng = random.Random(2026)
        surviving: dict[str, dict] = {}
        real_fsync = os.fsync
        real_replace = os.replace
        for trial in range(100):
            document = doc(rng.randint(0, 10**9))
            stage = rng.choice(("fsync", "replace", "none"))
            if stage == "none":
                document_id = workspace.save("assessments", document)
                surviving[document_id] = document
            else:
                target = "contestkit.store.os." + stage

                def boom(*args):
                    raise OSError(f"injected fault at {stage}")

                monkeypatch.setattr(target, boom)
                with pytest.raises(OSError):
                    workspace.save("assessments", document)
                monkeypatch.setattr("contestkit.store.os.fsync", real_fsync)
                monkeypatch.setattr("contestkit.store.os.replace", real_replace)
            self._check_workspace_sound(workspace, surviving)

    def test_leftover_temp_garbage_is_invisible(self, workspace):
        document_id = workspace.save("assessments", doc(5))
        junk = workspace.root / "assessments" / ".tmp-killed1234.json"
        junk.write_text('{"schema_version": "1", "payl', encoding="utf-8")
        assert workspace.list_ids("assessments") == [document_id]
        assert workspace.load("assessments", document_id) == doc(5)


class TestConcurrency:
    def test_parallel_saves_of_identical_content_stay_sound(self, workspace):
        document = doc(77)
        errors: list[Exception] = []

        def writer():
            try:
                for _ in range(10):
                    workspace.save("assessments", document)
            except Exception as exc:  # pragma: no cover - failure diagnostics
                errors.append(exc)

        threads = [threading.Thread(target=writer) for _ in range(8)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        assert not errors
        document_id = content_id(document)
        assert workspace.load("assessments", document_id) == document
