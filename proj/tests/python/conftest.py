import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("LUPOLY_CLI") or shutil.which("lupoly")
    if not path:
        candidate = ROOT / "build" / "tools" / "lupoly"
        path = str(candidate) if candidate.exists() else None
    if not path:
        pytest.skip("lupoly executable not found (set LUPOLY_CLI)")
    return path


@pytest.fixture(scope="session")
def schema_dir():
    return pathlib.Path(os.environ.get("LUPOLY_SCHEMAS", ROOT / "schemas"))
