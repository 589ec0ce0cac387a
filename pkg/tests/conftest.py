import pytest

from fppcheck.arith import ModularEmbedding
from fppcheck.corpus import load_embedded
from fppcheck.verify import Resolution

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def corpus():
    return load_embedded()


@pytest.fixture(scope="session")
def emb263():
    return ModularEmbedding(263, 16)


@pytest.fixture(scope="session")
def emb23():
    return ModularEmbedding(23, 4)


@pytest.fixture(scope="session")
def res263(corpus, emb263):
    # shared so the syzygy levels are computed once per session
    return Resolution(corpus, emb263)


@pytest.fixture
def record():
    def _record(criterion: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
