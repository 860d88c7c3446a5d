import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

TESTS_DIR = Path(__file__).parent


def mutag_data_dir():
    """Directory holding MUTAG_A.txt etc., or None when unavailable.

    Checked locations: $TOPOPOOL_DATA_DIR, then tests/data. The benchmark
    text files are not shipped with the repository.
    """
    candidates = []
    env = os.environ.get("TOPOPOOL_DATA_DIR")
    if env:
        candidates.append(Path(env))
    candidates.append(TESTS_DIR / "data")
    for base in candidates:
        for sub in (base, base / "MUTAG", base / "MUTAG" / "MUTAG", base / "MUTAG" / "raw"):
            if (sub / "MUTAG_A.txt").is_file():
                return base
    return None


@pytest.fixture
def tu_dir(tmp_path):
    """Write a tiny two-graph benchmark-format dataset and return its dir."""
    name = "TINY"
    d = tmp_path / name
    d.mkdir()
    # graph 1: triangle on nodes 1..3; graph 2: edge on nodes 4..5
    (d / f"{name}_A.txt").write_text(
        "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n4, 5\n5, 4\n"
    )
    (d / f"{name}_graph_indicator.txt").write_text("1\n1\n1\n2\n2\n")
    (d / f"{name}_graph_labels.txt").write_text("1\n-1\n")
    (d / f"{name}_node_labels.txt").write_text("0\n1\n0\n2\n1\n")
    return tmp_path
