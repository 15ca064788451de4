import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # tests import oracles.py directly

FIXTURES = Path(__file__).parent.parent / "fixtures" / "newsgroups2k"

_acceptance_results: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    if not FIXTURES.exists():
        pytest.skip("fixtures/newsgroups2k missing; run fixtures/make_fixtures.py")
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_archive(fixture_dir):
    from topiceval.corpusio import load_archive

    return load_archive(fixture_dir / "corpus.tpc")


@pytest.fixture(scope="session")
def fixture_embeddings(fixture_dir):
    from topiceval.embeddings import load_embeddings

    return load_embeddings(fixture_dir / "minilm_l6.emb")


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    if "test_acceptance" not in report.nodeid:
        return
    _acceptance_results.append((report.nodeid.split("::", 1)[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        status = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"[{status}] {name}")
