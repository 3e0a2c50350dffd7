import numpy as np
import pytest

from phasesweep.channel import golden_table1
from phasesweep.phasecore import PhaseAlphabet
from phasesweep.sweep import ChannelInstance


@pytest.fixture
def golden():
    return golden_table1()


@pytest.fixture
def k2():
    return PhaseAlphabet(2)


def random_instance(rng, N, direct=1.0, reflect=1.0):
    h0 = direct * complex(*rng.standard_normal(2))
    h = reflect * (rng.standard_normal(N) + 1j * rng.standard_normal(N))
    return ChannelInstance(h0, h)


_ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record a one-line verdict for an acceptance criterion."""
    def _report(criterion, ok, detail):
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        print(_ACCEPTANCE_LINES[-1])
    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
