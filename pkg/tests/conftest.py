import sys
from pathlib import Path

import pytest

from dcgx import read_grammar

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")
    config._acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        item.config._acceptance.append((marker.args[0], report.passed))


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed in sorted(results):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}")


@pytest.fixture
def sleep_text():
    return (DATA / "sleep.dcg").read_text()


@pytest.fixture
def sleep_grammar(sleep_text):
    return read_grammar(sleep_text)


@pytest.fixture
def data_dir():
    return DATA
