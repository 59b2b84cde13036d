import sys
from pathlib import Path

from pytest import fixture

from pathex.formulas import PathForest

# make sure tests can import conftest and helpers if needed
sys.path.append(str(Path(__file__).parent))


@fixture
def two_p7():
    """
    The forbidden forest of the 2P7 problem.
    """
    yield PathForest.of(7, 7)


@fixture
def graph_file(tmp_path):
    """
    Factory fixture writing text to a file with the given name and returning its
    path.
    """

    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path

    yield write
