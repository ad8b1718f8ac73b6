from pathlib import Path

import pytest

from orcas_intent.ingest import QueryRecord
from orcas_intent.lexicons import default_lexicons

DATA = Path(__file__).parent / "data"
PKG_DATA = Path(__file__).parents[1] / "src" / "orcas_intent" / "data"

_criteria = {}
_RANK = {"SKIP": 0, "PASS": 1, "FAIL": 2}


@pytest.fixture(scope="session")
def lexicons():
    return default_lexicons()


@pytest.fixture
def record():
    def make(query, url="https://example.org/", qid="q1", doc="D1"):
        return QueryRecord(qid, query, doc, url)
    return make


@pytest.fixture(scope="session")
def mini_gold_path():
    return PKG_DATA / "mini_gold.tsv"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if report.skipped:
            status = "SKIP"
        elif report.passed:
            status = "PASS"
        else:
            status = "FAIL"
        prev = _criteria.get(number)
        # Several tests may cover one criterion: any failure wins, then any pass.
        if prev is None or _RANK[status] > _RANK[prev[0]]:
            _criteria[number] = (status, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, text = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {text}")
