import sys
from pathlib import Path

import pytest

from ngramcbr.lexicons import load_lexicon_bundle, shipped_lexicon_dir

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def walkthrough_dir():
    return shipped_lexicon_dir("walkthrough")


@pytest.fixture(scope="session")
def walkthrough_bundle(walkthrough_dir):
    return load_lexicon_bundle(walkthrough_dir)


@pytest.fixture(scope="session")
def support_dir():
    return shipped_lexicon_dir("support")


@pytest.fixture(scope="session")
def support_bundle(support_dir):
    return load_lexicon_bundle(support_dir)


# -- acceptance criterion summary ---------------------------------------------

_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}")
