import pytest

from proxwell import make_periodic_bilayer

# Filled by test_acceptance; printed once at the end of the run.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def bilayer():
    """Factory for the equal-width N-period stacks: ``bilayer(N, V, bc)``."""
    return make_periodic_bilayer


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
