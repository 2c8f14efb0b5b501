import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import big_corpus, core_corpus, eval_corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus_big():
    return big_corpus()


@pytest.fixture(scope="session")
def corpus_eval():
    return eval_corpus()


@pytest.fixture(scope="session")
def corpus_core():
    return core_corpus()
