import pytest

from tpmatch.cli import resolve
from tpmatch.formats import load_pattern, load_word


@pytest.fixture(scope="session")
def fig1_pattern():
    return load_pattern(resolve("fig1.pattern"))


@pytest.fixture(scope="session")
def fig1_word():
    return load_word(resolve("fig1.word"))


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
