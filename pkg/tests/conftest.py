from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# (a, b, p, q, rotate, pad) -> stored grid
GRID_FIXTURES = {
    "segre_3_3_p11_q1.txt": (3, 3, 11, 1, False, 0),
    "segre_2_2_p5_q1.txt": (2, 2, 5, 1, False, 0),
    "segre_3_4_p14_q1_rot.txt": (3, 4, 14, 1, True, 0),
    "segre_3_4_p15_q1_rot.txt": (3, 4, 15, 1, True, 1),
}


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text().rstrip("\n")


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv("BETTI_CACHE_DIR", raising=False)


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
