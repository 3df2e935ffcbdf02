import sys

import pytest
from hypothesis import settings

from gbjsfusion import Frame
from gbjsfusion import reference as ref

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def faults():
    return Frame(ref.FAULTS)


@pytest.fixture
def abc():
    return Frame(ref.ABC)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
