import os

import pytest

from fischeralg import constructions as cons

LARGE = os.environ.get("FISCHERALG_LARGE") == "1"


def pytest_collection_modifyitems(config, items):
    if LARGE:
        return
    skip = pytest.mark.skip(reason="set FISCHERALG_LARGE=1 to run gated rows")
    for item in items:
        if "gated" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def sym5():
    return cons.build_sym(5)


@pytest.fixture(scope="session")
def su4():
    return cons.build_su(4)


@pytest.fixture(scope="session")
def su6():
    return cons.build_su(6)


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one acceptance line; fails the test when the criterion does not hold."""

    def record(name, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"{status}  {name}  {detail}".rstrip())
        print(ACCEPTANCE_LINES[-1])
        assert ok, f"{name}: {detail}"

    def skip(name, reason):
        ACCEPTANCE_LINES.append(f"SKIPPED  {name}  {reason}")
        pytest.skip(reason)

    record.skip = skip
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
