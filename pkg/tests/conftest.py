import logging

import numpy as np
import pytest

from src.graph.catalog import corpus
from src.utils.config import Config

SEED = 20240611


@pytest.fixture(scope="session")
def corpus_graphs():
    return corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def config(tmp_path):
    return Config(
        {
            "LOG_FILE": str(tmp_path / "logs" / "test.log"),
            "REPORT_DIR": str(tmp_path / "reports"),
            "RANDOM_SEED": str(SEED),
            "P_RESTARTS": "8",
            "FALSIFIER_BUDGET": "6",
        }
    )


@pytest.fixture
def logger():
    return logging.getLogger("tests")
