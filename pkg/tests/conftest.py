import numpy as np
import pytest

from posner_qnn import compile_circuit, parse_truth_table

COMPLEMENT_LINES = ["11:00", "10:01", "01:10", "00:11"]
IDENTITY_LINES = ["00:00", "01:01", "10:10", "11:11"]

ACCEPTANCE_REPORT: list[str] = []


@pytest.fixture
def complement_table():
    return parse_truth_table(COMPLEMENT_LINES)


@pytest.fixture
def identity_table():
    return parse_truth_table(IDENTITY_LINES)


@pytest.fixture
def complement_circuit(complement_table):
    return compile_circuit(complement_table)


@pytest.fixture
def identity_circuit(identity_table):
    return compile_circuit(identity_table)


@pytest.fixture
def rng():
    return np.random.default_rng(20161)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_REPORT:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_REPORT:
            terminalreporter.write_line(line)
