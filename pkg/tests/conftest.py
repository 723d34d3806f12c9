import os
import time
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance = {}


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def load_worked_values():
    out = {}
    for line in (FIXTURES / "worked_values.txt").read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


@pytest.fixture(scope="session")
def worked():
    return load_worked_values()


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when in ("setup", "call"):
        name = report.nodeid.split("::")[-1]
        prev = _acceptance.get(name)
        if report.when == "setup" and report.passed:
            return
        if prev is None or report.failed:
            _acceptance[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        outcome, duration = _acceptance[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f}s)")
