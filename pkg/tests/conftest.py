import os
import re

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria: dict[int, str] = {}


_CRITERION = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    num = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        if report.outcome == "skipped":
            _criteria[num] = "SKIP"
        else:
            _criteria[num] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        terminalreporter.write_line(f"criterion {num}: {_criteria[num]}")


@pytest.fixture
def tmp_input(tmp_path):
    def make(text: str, name: str = "input.sing"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return make
