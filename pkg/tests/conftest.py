import pytest

from latmon.corpus import boolean, chain, m3, n5

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance_line():
    def record(n: int, passed: bool, detail: str = ""):
        ACCEPTANCE_LINES[n] = f"criterion {n}: {'PASS' if passed else 'FAIL'}" + (f"  {detail}" if detail else "")

    return record


@pytest.fixture
def c3():
    return chain(3)


@pytest.fixture
def b2():
    return boolean(2)


@pytest.fixture
def diamond_m3():
    return m3()


@pytest.fixture
def pentagon():
    return n5()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
