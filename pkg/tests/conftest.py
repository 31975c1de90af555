from pathlib import Path

import pytest

from homdual.lib.config import Settings
from homdual.lib.families import directed_path, transitive_tournament
from homdual.lib.schema import serialize_structure


@pytest.fixture
def settings():
    return Settings()


@pytest.fixture
def t4():
    return transitive_tournament(4)


@pytest.fixture
def p4():
    return directed_path(4)


@pytest.fixture
def write_structure(tmp_path: Path):
    """Writes a structure document into the test directory and returns its path."""

    def write(structure, name=None):
        path = tmp_path / (name or f'{structure.name or "structure"}.dg')
        path.write_text(serialize_structure(structure), encoding='utf-8')
        return path

    return write
