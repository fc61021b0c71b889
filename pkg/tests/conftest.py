import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plusone import languages
from plusone.semigroup import transition_semigroup
from plusone.wellformed import WfContext


@pytest.fixture(scope="session")
def cb_ctx():
    """{1, 0}: contains-b, with a -> 1 (index 0) and b -> 0 (index 1)."""
    _, alpha = transition_semigroup(languages.contains_factor("ab", "b"))
    return WfContext(alpha)


@pytest.fixture(scope="session")
def parity_ctx():
    """Parity over {a}: t_a is index 0, t_aa is index 1."""
    _, alpha = transition_semigroup(languages.length_mod("a", 2, 0))
    return WfContext(alpha)


@pytest.fixture(scope="session")
def contains_aa():
    return languages.contains_factor("ab", "aa")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
