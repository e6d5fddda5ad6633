import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from setoidw import derived  # noqa: E402
from setoidw.setoid import codiscrete  # noqa: E402


@pytest.fixture(scope="session")
def nat():
    return derived.nat_signature().family


@pytest.fixture(scope="session")
def bintree():
    return derived.bintree_signature().family


@pytest.fixture(scope="session")
def nonext():
    return derived.nonext_signature().family


@pytest.fixture(scope="session")
def lists():
    return derived.list_signature(codiscrete(["a", "b"])).family


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
