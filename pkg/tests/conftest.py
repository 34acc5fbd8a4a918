import pytest

import corpus as C

# Circuits shared by the acceptance criteria that run "on every corpus circuit".
CORPUS_SIZE = 1000

_RESULTS = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    _RESULTS[criterion] = line
    print(line)


@pytest.fixture(scope="session")
def circuits():
    return C.corpus(CORPUS_SIZE)


@pytest.fixture(scope="session")
def small_circuits():
    return C.corpus(60)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[k])
