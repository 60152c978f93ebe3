import pathlib

import pytest

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def raw_dir():
    return FIXTURES / "raw"


@pytest.fixture(scope="session")
def clean_dir():
    return FIXTURES / "clean"


@pytest.fixture(scope="session")
def raw_files(raw_dir):
    files = sorted(raw_dir.glob("*.svg"))
    assert len(files) >= 100, "fixture corpus missing; run scripts/gen_fixtures.py"
    return files


@pytest.fixture(scope="session")
def clean_files(clean_dir):
    files = sorted(clean_dir.glob("*.svg"))
    assert len(files) >= 100, "fixture corpus missing; run scripts/gen_fixtures.py"
    return files
