from __future__ import annotations

import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from chordsmith.musicxml import parse_musicxml
from chordsmith.theory import Mode

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def hb_path() -> pathlib.Path:
    return FIXTURES / "happy_birthday.musicxml"


@pytest.fixture(scope="session")
def fe_path() -> pathlib.Path:
    return FIXTURES / "fuer_elise.musicxml"


@pytest.fixture(scope="session")
def pitches_path() -> pathlib.Path:
    return FIXTURES / "two_note.pitches.txt"


@pytest.fixture(scope="session")
def hb_melody(hb_path):
    return parse_musicxml(hb_path.read_text())


@pytest.fixture(scope="session")
def fe_melody(fe_path):
    return parse_musicxml(fe_path.read_text(), mode=Mode.MINOR)
