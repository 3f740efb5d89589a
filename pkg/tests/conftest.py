"""Shared fixtures: case documents on disk and a service client factory."""

from __future__ import annotations

import json
from importlib import resources

import pytest

CASE_FILES = [
    "case1_sheet.json",
    "case1_scenario.json",
    "case2_sheet.json",
    "case2_scenario.json",
    "case3_sheet.json",
    "case3_scenario.json",
]


def _case_text(name: str) -> str:
    return (
        resources.files("contestkit.data")
        .joinpath(f"cases/{name}")
        .read_text(encoding="utf-8")
    )


@pytest.fixture()
def case_dir(tmp_path):
    """The bundled case fixtures copied to real files for CLI-style access."""
    target = tmp_path / "cases"
    target.mkdir()
    for name in CASE_FILES:
        (target / name).write_text(_case_text(name), encoding="utf-8")
    return target


@pytest.fixture()
def case1_doc():
    return json.loads(_case_text("case1_sheet.json"))


@pytest.fixture()
def case1_scenario_doc():
    return json.loads(_case_text("case1_scenario.json"))


@pytest.fixture()
def workspace(tmp_path):
    from contestkit.store import WorkspaceStore

    return WorkspaceStore(tmp_path / "workspace")


@pytest.fixture()
def client(workspace):
    from fastapi.testclient import TestClient

    from contestkit.service import create_app

    return TestClient(create_app(workspace), raise_server_exceptions=False)
