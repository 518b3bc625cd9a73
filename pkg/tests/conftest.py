import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN


def load_golden(name: str) -> str:
    return (GOLDEN / name).read_text()
