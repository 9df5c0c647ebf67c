import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
if str(TESTS) not in sys.path:
    sys.path.insert(0, str(TESTS))

from annograph import build_graph, parse_aif, parse_tier  # noqa: E402

DATA = TESTS / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def golden_aif_bytes() -> bytes:
    return (DATA / "fig_aif.xml").read_bytes()


@pytest.fixture
def golden_graph(golden_aif_bytes):
    return parse_aif(golden_aif_bytes)


@pytest.fixture(scope="session")
def golden_lexicon_bytes() -> bytes:
    return (DATA / "lexicon.xml").read_bytes()


@pytest.fixture(scope="session")
def timit_tiers():
    word = parse_tier((DATA / "sa1.wrd").read_bytes(), "W", source_name="sa1.wrd")
    phone = parse_tier((DATA / "sa1.phn").read_bytes(), "P", source_name="sa1.phn")
    return [word, phone]


@pytest.fixture
def timit_graph(timit_tiers):
    return build_graph(timit_tiers)
