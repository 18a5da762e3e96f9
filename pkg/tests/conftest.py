import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from legch.front import parse_front  # noqa: E402
from legch.lagrangian import resolve  # noqa: E402

CORPUS = Path(__file__).resolve().parents[1] / "src" / "legch" / "corpus"
DATA = Path(__file__).parent / "data"
KNOT_CORPUS = ["unknot", "trefoil", "stabilized_unknot", "stabilized_unknot_pm",
               "stabilized_unknot_2", "split_link", "hopf_link"]


def load_front(name: str):
    path = CORPUS / f"{name}.front"
    if not path.exists():
        path = DATA / f"{name}.front"
    return parse_front(path.read_text())


@pytest.fixture
def lag():
    return lambda name: resolve(load_front(name))


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
            terminalreporter.write_line(ACCEPTANCE[key])
