from collections import OrderedDict
from pathlib import Path
import sys

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

CRITERIA = OrderedDict([
    ("AC1", "(-1)-class counts 27 and 10, under 1 s each"),
    ("AC2", "cylinder corpus exact, every 1/1000 perturbation fails, under 1 s"),
    ("AC3", "epsilon interval (0, 1/2), empty under the cubic's upper bound"),
    ("AC4", "quadric-cone and plane-shift LNDs, Leibniz/commutator suites x1000"),
    ("AC5", "crepant coefficient m - 1, horizontal section coefficient 2"),
    ("AC6", "Veronese graph script, fiber multiplicities, negative definite chain"),
    ("AC7", "Noether-Fano states, transform, search under 60 s with descending hits"),
    ("AC8", "property suites with at least 500 cases each"),
])

_outcomes: dict[str, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion covered by the test")


def pytest_collection_finish(session):
    for item in session.items:
        for mark in item.iter_markers("criterion"):
            _outcomes.setdefault(mark.args[0], [])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    ids = [m.args[0] for m in item.iter_markers("criterion")]
    if not ids:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        for cid in ids:
            _outcomes.setdefault(cid, []).append("passed" if rep.passed else rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for cid, text in CRITERIA.items():
        if cid not in _outcomes:
            continue
        results = _outcomes[cid]
        status = "PASS" if results and all(r == "passed" for r in results) else "FAIL"
        terminalreporter.write_line(f"{status} {cid} ({len(results)} checks): {text}")
