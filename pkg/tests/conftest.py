import pytest

from fuzzycbr import SystemRecord

SYSTEM1_COUNTS = ((0, 0, 51, 24, 30), (18, 18, 48, 21, 0), (36, 30, 39, 0, 0))
SYSTEM2_COUNTS = ((0, 18, 45, 27, 0), (18, 24, 48, 0, 0), (36, 27, 27, 0, 0))

# (criterion, passed, detail) lines gathered by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


@pytest.fixture
def system1():
    return SystemRecord.from_counts("system-1", *SYSTEM1_COUNTS)


@pytest.fixture
def system2():
    return SystemRecord.from_counts("system-2", *SYSTEM2_COUNTS)


@pytest.fixture
def crisp_e():
    return SystemRecord.from_counts("crisp-e", (0, 0, 0, 0, 2), (0, 0, 0, 0, 2), (0, 0, 0, 0, 2))


@pytest.fixture
def crisp_a():
    return SystemRecord.from_counts("crisp-a", (2, 0, 0, 0, 0), (2, 0, 0, 0, 0), (2, 0, 0, 0, 0))


@pytest.fixture
def degenerate():
    return SystemRecord.from_counts("degenerate", (2, 0, 0, 0, 0), (0, 0, 0, 0, 2), (0, 0, 0, 0, 2))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
